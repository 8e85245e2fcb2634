from django.apps import AppConfig


class CayleyExpanderConfig(AppConfig):
    name = "cayley_expander"
    verbose_name = "Cayley expander"
