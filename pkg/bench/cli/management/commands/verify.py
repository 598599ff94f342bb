from dataclasses import replace

from django.core.management.base import CommandError

from cli.base import EXIT_USAGE, CubeCommand
from cube.dyadic import parse_exact
from search.config import VerifierConfig
from search.dichotomy import verify_prop41_dichotomy
from search.fraclex_suite import verify_bootstrapping, verify_fraclex
from search.isoperimetry import verify_conjecture, verify_iso_and_uniqueness
from search.reports import record_report
from search.shifting_suite import verify_cascade, verify_shifting, verify_slice_identity

DEFAULT_N = {"slices": 3, "shifting": 3, "cascade": 4, "bootstrap": 4}


def run_verifier(kind, n, constant, config, jobs):
    if kind in ("iso", "uniqueness"):
        return replace(verify_iso_and_uniqueness(n, config, jobs), kind=kind)
    if kind == "conjecture":
        return verify_conjecture(n, constant, config, jobs)
    if kind == "prop41":
        return verify_prop41_dichotomy(n, config, jobs)
    if kind == "fraclex":
        return verify_fraclex(config)
    if kind == "slices":
        return verify_slice_identity(n, config)
    if kind == "shifting":
        return verify_shifting(n, config)
    if kind == "cascade":
        return verify_cascade(n, config)
    return verify_bootstrapping(n, config, jobs)


class Command(CubeCommand):
    help = "Run one verifier and write its summary and findings as JSON lines"

    def add_arguments(self, parser):
        parser.add_argument(
            "kind",
            choices=["iso", "uniqueness", "conjecture", "prop41", "fraclex", "slices", "shifting", "cascade", "bootstrap"],
        )
        parser.add_argument("--n", type=int, default=None)
        parser.add_argument("--C", dest="constant", default=None, help="Conjectured constant, int or p/q")
        parser.add_argument("--seed", type=int, default=None)
        parser.add_argument("--jobs", type=int, default=None, help="Worker processes (default CUBE_ISO_JOBS)")
        parser.add_argument("--record", action="store_true", help="Archive the run in the database")
        super().add_arguments(parser)

    def run(self, *args, **options):
        kind = options["kind"]
        n = options["n"] if options["n"] is not None else DEFAULT_N.get(kind)
        if n is None and kind != "fraclex":
            raise CommandError(f"verify {kind} needs --n", returncode=EXIT_USAGE)
        constant = parse_exact(options["constant"]) if options["constant"] is not None else None
        jobs = options["jobs"]
        if jobs is not None and jobs < 1:
            raise CommandError(f"--jobs must be at least 1, got {jobs}", returncode=EXIT_USAGE)

        config = VerifierConfig.from_settings(seed=options["seed"])
        report = run_verifier(kind, n, constant, config, jobs)

        for record in report.records():
            self.emit(record)
        if options["record"]:
            parameters = dict(config.to_dict(), n=n)
            if kind == "conjecture":
                parameters["C"] = constant if constant is not None else config.conjecture_c
            run = record_report(report, parameters)
            self.status(f"✅ Archived as run {run.pk}")
        if not report.passed:
            self.fail(f"verify {kind} failed with {len(report.findings)} findings")
        self.status(f"✅ verify {kind} passed")
