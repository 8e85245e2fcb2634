"""Spectral report of a GraphFile"""
from ...enums import EigenMode
from ...spectral import analyze
from ..base import ExpanderCommand


class Command(ExpanderCommand):

    help = (
        "Prints the spectral report (eigen gaps, Cheeger bounds, diameter, Mohar bound). "
        "Exits with code 3 when the diameter exceeds the Mohar bound."
    )

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument("--mode", choices=EigenMode.values(), default=EigenMode.AUTO.value)
        parser.add_argument("--tol", type=float, default=None)
        parser.add_argument(
            "--no-cheeger",
            action="store_true",
            help="skip exhaustive Cheeger enumeration on small graphs",
        )
        parser.add_argument("--out", type=str, default=None, help="JSON output path")

    def handle(self, *args, **options):
        graph = self.load_graph(options)
        report = analyze(
            graph,
            mode=EigenMode(options["mode"]),
            tol=options["tol"],
            exact_cheeger=False if options["no_cheeger"] else None,
        )
        self.emit(report, options["out"])
