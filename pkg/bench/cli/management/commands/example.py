from cli.base import CubeCommand
from search.examples import check_remark_family, check_tightness_family


class Command(CubeCommand):
    help = "Build one of the constructed families and check its closed forms"

    def add_arguments(self, parser):
        parser.add_argument("which", choices=["tightness", "remark"])
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--s", type=int, default=None)
        parser.add_argument("--t", type=int, required=True)
        super().add_arguments(parser)

    def run(self, *args, **options):
        n, t = options["n"], options["t"]
        if options["which"] == "tightness":
            s = n if options["s"] is None else options["s"]
            result = check_tightness_family(n, s, t)
        else:
            result = check_remark_family(n, t)
        self.emit(dict(result, record="example", example=options["which"]))
        if not result["holds"]:
            self.fail(f"the {options['which']} family at n={n}, t={t} does not match its closed form")
