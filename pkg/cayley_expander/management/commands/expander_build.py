"""Builds a Cayley expander and writes it as a GraphFile"""
from ...cayley import build_cayley, select_n, slice_cayley
from ...enums import GraphFormat
from ...graphs import write_graph
from ...spectral import diameter
from ..base import ExpanderCommand


class Command(ExpanderCommand):

    help = "Builds Cay(SL(2, Z_n); S_n), whole or sliced to a node count, and writes it"

    def add_arguments(self, parser):
        size = parser.add_mutually_exclusive_group(required=True)
        size.add_argument("--n", type=int, help="modulus of the full Cayley graph")
        size.add_argument(
            "--nodes", type=int, help="node count; slices the smallest large enough graph"
        )
        parser.add_argument("--out", type=str, required=True, help="output GraphFile path")
        parser.add_argument("--format", choices=GraphFormat.values(), default=None)

    def handle(self, *args, **options):
        if options["n"] is not None:
            cayley = build_cayley(options["n"])
            document = cayley.to_document()
        else:
            cayley = build_cayley(select_n(options["nodes"]))
            document = slice_cayley(cayley, options["nodes"]).to_document()
        graph = document.to_graph()
        write_graph(document, options["out"], options["format"])
        self.stdout.write(
            f"n={cayley.n} nodes={graph.num_nodes} edges={graph.num_edges} "
            f"diameter={diameter(graph)}"
        )
