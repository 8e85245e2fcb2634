"""Writes one of the synthetic test graphs"""
from ...enums import GraphFormat, SyntheticGraph
from ...graphs import synthetic, write_graph
from ..base import ExpanderCommand


class Command(ExpanderCommand):

    help = "Writes a barbell, path, cycle, complete graph or balanced binary tree"

    def add_arguments(self, parser):
        parser.add_argument("kind", choices=SyntheticGraph.values())
        parser.add_argument(
            "size", type=int, help="clique size, node count, or tree depth"
        )
        parser.add_argument("--out", type=str, required=True)
        parser.add_argument("--format", choices=GraphFormat.values(), default=None)

    def handle(self, *args, **options):
        graph = synthetic(options["kind"], options["size"])
        write_graph(graph, options["out"], options["format"])
        self.stdout.write(f"nodes={graph.num_nodes} edges={graph.num_edges}")
