import logging

from django.core.management.base import BaseCommand, CommandError

from cube.exceptions import CubeError
from cube.literals import load_family_file
from search.reports import dumps

logger = logging.getLogger(__name__)

EXIT_FINDINGS = 1
EXIT_USAGE = 2


class CubeCommand(BaseCommand):
    """
    Shared plumbing: JSON output, family files and exit codes.

    Subclasses implement run(). A CubeError becomes exit 2; calling
    fail() after the output is written gives exit 1.
    """

    def add_arguments(self, parser):
        parser.add_argument("--pretty", action="store_true", help="Indented JSON and status lines")

    def handle(self, *args, **options):
        self.pretty = options.get("pretty", False)
        try:
            return self.run(*args, **options)
        except CubeError as error:
            logger.warning(f"⚠️ {error}")
            raise CommandError(str(error), returncode=EXIT_USAGE) from error

    def run(self, *args, **options):
        raise NotImplementedError("subclasses of CubeCommand must provide a run() method")

    def emit(self, record):
        self.stdout.write(dumps(record, pretty=self.pretty))

    def load_family(self, path):
        return load_family_file(path)

    def status(self, message):
        if self.pretty:
            self.stdout.write(self.style.SUCCESS(message))

    def fail(self, message):
        logger.warning(f"⚠️ {message}")
        raise CommandError(message, returncode=EXIT_FINDINGS)
