"""Curvature report of a GraphFile"""
from ...curvature import curvature_report
from ..base import ExpanderCommand


class Command(ExpanderCommand):

    help = "Prints balanced Forman and Ollivier curvature for every edge"

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument("--idleness", type=float, default=None)
        parser.add_argument(
            "--workers", type=int, default=None, help="process count, default from config"
        )
        parser.add_argument("--csv", type=str, default=None, help="also write u,v,forman,ollivier")
        parser.add_argument("--out", type=str, default=None, help="JSON output path")

    def handle(self, *args, **options):
        graph = self.load_graph(options)
        report = curvature_report(graph, options["idleness"], options["workers"])
        if options["csv"]:
            report.to_csv(options["csv"])
        self.emit(report, options["out"])
