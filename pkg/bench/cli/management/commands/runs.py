from cli.base import CubeCommand
from search.models import VerificationRun


class Command(CubeCommand):
    help = "List archived verification runs, newest first"

    def add_arguments(self, parser):
        parser.add_argument("--kind", choices=[kind for kind, _ in VerificationRun.KINDS], default=None)
        parser.add_argument("--limit", type=int, default=20)
        super().add_arguments(parser)

    def run(self, *args, **options):
        runs = VerificationRun.objects.all()
        if options["kind"]:
            runs = runs.filter(kind=options["kind"])
        for run in runs[: options["limit"]]:
            self.emit(
                {
                    "record": "run",
                    "id": run.pk,
                    "kind": run.kind,
                    "n": run.n,
                    "passed": run.passed,
                    "findings": run.finding_count,
                    "parameters": run.parameters,
                    "created_at": run.created_at,
                }
            )
