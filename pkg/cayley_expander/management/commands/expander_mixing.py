"""Lazy random walk mixing time of a GraphFile"""
from ...dynamics import mixing_time
from ..base import ExpanderCommand


class Command(ExpanderCommand):

    help = "Prints the lazy random walk mixing time, maximized over point-mass starts"

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument(
            "--start", type=int, action="append", default=None, help="start node, repeatable"
        )
        parser.add_argument("--max-steps", type=int, default=None)
        parser.add_argument(
            "--non-strict",
            action="store_true",
            help="accept irregular graphs using the degree-normalized walk",
        )
        parser.add_argument("--trajectory-csv", type=str, default=None)
        parser.add_argument("--out", type=str, default=None, help="JSON output path")

    def handle(self, *args, **options):
        graph = self.load_graph(options)
        result = mixing_time(
            graph,
            starts=options["start"],
            strict=not options["non_strict"],
            max_steps=options["max_steps"],
        )
        if options["trajectory_csv"]:
            result.write_trajectory_csv(options["trajectory_csv"])
        self.emit(result, options["out"])
