from typing import List

from django.core.exceptions import ImproperlyConfigured
from pydantic import BaseSettings


class ExpanderConfig(BaseSettings):
    """cayley_expander configuration schema.

    Values come from ``settings.CAYLEY_EXPANDER_CONFIG`` when Django is configured,
    and from ``CAYLEY_EXPANDER_*`` environment variables otherwise (or for keys the
    settings dict leaves out).

    Example::

        CAYLEY_EXPANDER_CONFIG = {"workers": 4, "eigen_tol": 1e-9}
    """

    workers: int = 1
    eigen_tol: float = 1e-10
    exact_eigen_max_nodes: int = 3000
    cheeger_max_nodes: int = 24
    idleness: float = 0.5
    mixing_cap_factor: int = 10
    probe_step: float = 1e-4
    probe_seeds: List[int] = [0, 1, 2]
    infinite_ball_max_radius: int = 12
    log_level: str = "WARNING"

    class Config:
        env_prefix = "CAYLEY_EXPANDER_"


try:
    from django.conf import settings

    expander_config = ExpanderConfig.parse_obj(settings.CAYLEY_EXPANDER_CONFIG)

except (ImproperlyConfigured, AttributeError):
    expander_config = ExpanderConfig()
