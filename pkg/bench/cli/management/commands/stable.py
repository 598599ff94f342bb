from cli.base import CubeCommand
from search.config import VerifierConfig
from search.isoperimetry import UNKNOWN, stability_table
from search.reports import write_s_table_csv


class Command(CubeCommand):
    help = "Write the s(n, m, l) table as CSV (n <= 5); uncovered sizes read 'unknown'"

    def add_arguments(self, parser):
        parser.add_argument("n", type=int)
        parser.add_argument("--jobs", type=int, default=None)
        super().add_arguments(parser)

    def run(self, *args, **options):
        n = options["n"]
        rows, constant, witness = stability_table(n, VerifierConfig.from_settings(), options["jobs"])
        write_s_table_csv(rows, self.stdout)
        unknown = [m for _, m, _, s in rows if s == UNKNOWN]
        if unknown:
            self.status(f"⚠️ s({n}, m, l) is unknown for {len(unknown)} sizes m in {unknown[0]}..{unknown[-1]}")
            self.status(f"✅ best_constant({n}) >= {constant} at {witness}")
        else:
            self.status(f"✅ best_constant({n}) = {constant} at {witness}")
