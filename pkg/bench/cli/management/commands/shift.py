from cli.base import CubeCommand
from cube.family import edge_boundary_size
from shifting.operators import shift, shift_decreases_influence_hypothesis


class Command(CubeCommand):
    help = "Apply the compression S_ST to a family"

    def add_arguments(self, parser):
        parser.add_argument("family_file")
        parser.add_argument("--S", dest="source", type=int, nargs="*", default=[], help="Coordinates removed")
        parser.add_argument("--T", dest="target", type=int, nargs="*", default=[], help="Coordinates added")
        super().add_arguments(parser)

    def run(self, *args, **options):
        family = self.load_family(options["family_file"])
        source, target = options["source"], options["target"]
        shifted = shift(family, source, target)
        self.emit(
            {
                "S": sorted(source),
                "T": sorted(target),
                "family": shifted,
                "boundary_before": edge_boundary_size(family),
                "boundary_after": edge_boundary_size(shifted),
                "stability_hypothesis": shift_decreases_influence_hypothesis(family, source, target),
            }
        )
