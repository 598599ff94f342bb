from cli.base import CubeCommand
from cube.family import edge_boundary_size, measure, total_influence
from lex.influence import lex_boundary
from lex.segments import stability_gap


class Command(CubeCommand):
    help = "Edge boundary of a family against the lex segment of the same size"

    def add_arguments(self, parser):
        parser.add_argument("family_file")
        super().add_arguments(parser)

    def run(self, *args, **options):
        family = self.load_family(options["family_file"])
        boundary = edge_boundary_size(family)
        lex = lex_boundary(family.n, family.size)
        self.emit(
            {
                "n": family.n,
                "m": family.size,
                "measure": measure(family),
                "boundary": boundary,
                "lex_boundary": lex,
                "excess": boundary - lex,
                "influence": total_influence(family),
                "gap": stability_gap(family),
            }
        )
