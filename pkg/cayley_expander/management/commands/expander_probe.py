"""Oversquashing sensitivity probe"""
from typing import List

from pydantic import BaseModel

from ...enums import ScheduleKind
from ...propagation import EgpSchedule, sensitivity_probe
from ..base import ExpanderCommand


class ProbeReport(BaseModel):
    source: int
    target: int
    schedule: EgpSchedule
    seeds: List[int]
    normalized: bool
    influence: float


class Command(ExpanderCommand):

    help = "Prints the finite-difference influence of a source node on a target node"

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument("--source", type=int, required=True)
        parser.add_argument("--target", type=int, required=True)
        parser.add_argument("--layers", type=int, default=6)
        parser.add_argument(
            "--schedule", choices=ScheduleKind.values(), default=ScheduleKind.ALTERNATING.value
        )
        parser.add_argument("--flip", action="store_true")
        parser.add_argument("--seeds", type=str, default="0,1,2")
        parser.add_argument("--dim", type=int, default=8)
        parser.add_argument(
            "--normalize",
            action="store_true",
            help="report the source's share of the target's total sensitivity",
        )
        parser.add_argument("--out", type=str, default=None, help="JSON output path")

    def handle(self, *args, **options):
        graph = self.load_graph(options)
        schedule = EgpSchedule.from_kind(options["schedule"], options["layers"], options["flip"])
        seeds = [int(s) for s in options["seeds"].split(",")]
        influence = sensitivity_probe(
            graph,
            schedule,
            options["source"],
            options["target"],
            seeds=seeds,
            dim=options["dim"],
            normalize=options["normalize"],
        )
        report = ProbeReport(
            source=options["source"],
            target=options["target"],
            schedule=schedule,
            seeds=seeds,
            normalized=options["normalize"],
            influence=influence,
        )
        self.emit(report, options["out"])
