from cli.base import CubeCommand
from cube.family import influence, pivotal_family, total_influence


class Command(CubeCommand):
    help = "Total influence of a family, or the influence of one coordinate"

    def add_arguments(self, parser):
        parser.add_argument("family_file")
        parser.add_argument("--coord", type=int, default=None, help="Report Inf_i for this coordinate only")
        super().add_arguments(parser)

    def run(self, *args, **options):
        family = self.load_family(options["family_file"])
        i = options["coord"]
        if i is None:
            per_coordinate = {str(c): influence(family, c) for c in range(1, family.n + 1)}
            self.emit({"n": family.n, "influence": total_influence(family), "coordinates": per_coordinate})
        else:
            self.emit(
                {
                    "n": family.n,
                    "coord": i,
                    "influence": influence(family, i),
                    "pivotal": pivotal_family(family, i),
                }
            )
