"""Run the Django test modules under pytest, as ``manage.py test`` would."""
import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent / "bench"))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "cubeiso.settings")

import django  # noqa: E402

django.setup()


@pytest.fixture(scope="session", autouse=True)
def _django_test_environment():
    from django.test.utils import setup_test_environment, teardown_test_environment
    from django.db import connections

    setup_test_environment()
    old = []
    for c in connections.all():
        old.append((c, c.settings_dict["NAME"]))
        c.creation.create_test_db(verbosity=0, autoclobber=True)
    yield
    for c, name in old:
        c.creation.destroy_test_db(name, verbosity=0)
    teardown_test_environment()
