from cli.base import CubeCommand
from cube.family import total_influence
from lex.influence import lex_boundary
from lex.segments import lex_segment


class Command(CubeCommand):
    help = "Emit the lex segment of the m largest subsets of [n] and its edge boundary"

    def add_arguments(self, parser):
        parser.add_argument("n", type=int)
        parser.add_argument("m", type=int)
        super().add_arguments(parser)

    def run(self, *args, **options):
        n, m = options["n"], options["m"]
        family = lex_segment(n, m)
        self.emit({"family": family, "n": n, "m": m, "boundary": lex_boundary(n, m), "influence": total_influence(family)})
