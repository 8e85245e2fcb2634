"""EGP forward pass over a GraphFile"""
from pathlib import Path

import numpy as np

from ...enums import ScheduleKind
from ...exceptions import GraphError
from ...propagation import degree_one_hot, egp_forward
from ..base import ExpanderCommand


def load_features(path: str) -> np.ndarray:
    if Path(path).suffix == ".npy":
        return np.load(path)
    return np.loadtxt(path, delimiter=",", ndmin=2)


def save_features(path: str, features: np.ndarray) -> None:
    if Path(path).suffix == ".npy":
        np.save(path, features)
    else:
        np.savetxt(path, features, delimiter=",", fmt="%.17g")


class Command(ExpanderCommand):

    help = "Runs GIN layers interleaving the input graph with its Cayley expander"

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument(
            "--features", type=str, default=None, help=".npy or CSV; one-hot degree if absent"
        )
        parser.add_argument("--layers", type=int, default=4)
        parser.add_argument(
            "--dims", type=str, default=None, help="comma separated output dim per layer"
        )
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument(
            "--schedule", choices=ScheduleKind.values(), default=ScheduleKind.ALTERNATING.value
        )
        parser.add_argument(
            "--flip", action="store_true", help="start on the Cayley graph instead"
        )
        parser.add_argument("--epsilon", type=float, default=0.0)
        parser.add_argument("--out", type=str, required=True, help=".npy or CSV output path")

    def handle(self, *args, **options):
        graph = self.load_graph(options)
        if options["features"]:
            features = load_features(options["features"])
        else:
            features = degree_one_hot(graph)
        if features.shape[0] != graph.num_nodes:
            raise GraphError(
                f"{features.shape[0]} feature rows for {graph.num_nodes} nodes"
            )
        dims = None
        if options["dims"]:
            dims = [int(d) for d in options["dims"].split(",")]
        state = egp_forward(
            features,
            graph,
            options["layers"],
            options["seed"],
            dims=dims,
            kind=ScheduleKind(options["schedule"]),
            flip=options["flip"],
            epsilon=options["epsilon"],
        )
        save_features(options["out"], state.features)
        self.stdout.write(
            f"n={state.n} shape={state.features.shape[0]}x{state.features.shape[1]} "
            f"schedule={','.join(tag.value for tag in state.schedule.tags)}"
        )
