from cli.base import CubeCommand
from lex.segments import boundary_excess
from symmetry.distance import closest_lex_image


class Command(CubeCommand):
    help = "Distance from a family to the closest image of the lex segment of its size"

    def add_arguments(self, parser):
        parser.add_argument("family_file")
        super().add_arguments(parser)

    def run(self, *args, **options):
        family = self.load_family(options["family_file"])
        dist, automorphism, image = closest_lex_image(family)
        self.emit(
            {
                "n": family.n,
                "m": family.size,
                "dist": dist,
                "excess": boundary_excess(family),
                "automorphism": automorphism,
                "image": image,
            }
        )
