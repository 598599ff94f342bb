import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# The bench has no web surface; the key only satisfies Django's startup checks.
SECRET_KEY = os.environ.get("CUBE_ISO_SECRET_KEY", "cubeiso-bench-not-served")

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    # Local apps
    "cube",
    "lex",
    "symmetry",
    "shifting",
    "fraclex",
    "search",
    "cli",
]

# Database
# Only the findings archive (verify ... --record) touches it.
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "cubeiso.sqlite3",
    }
}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# Verification bench configuration
# Constants are exact: ints or "p/q" strings.
CUBE_ISO = {
    "JOBS": int(os.environ.get("CUBE_ISO_JOBS", "1")),
    "SEED": 0,
    "EXHAUSTIVE_MAX_N": 4,
    "ORBIT_MAX_SIZE": 8,
    "SAMPLES": {5: 2000, 6: 10000},
    "C1_GRID": ["1/64", "1/32", "1/16", "1/8", "1/4", "1/2", "1"],
    "ORDER2_C": "1/6",
    "CONJECTURE_C": 2,
    "ORDER1_LOG_DEN": 8,
    "ORDER2_LOG_DEN": 6,
    "MAX_FINDINGS": 100,
    "UNIT_SIZE": 4096,
}


LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {module} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "file": {
            "level": "INFO",
            "class": "logging.FileHandler",
            "filename": BASE_DIR / "cubeiso.log",
            "formatter": "verbose",
            "delay": True,
        },
        "console": {
            "level": os.environ.get("CUBE_ISO_LOG_LEVEL", "WARNING"),
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "django": {
            "handlers": ["file", "console"],
            "level": "INFO",
            "propagate": True,
        },
        "cube": {"handlers": ["file", "console"], "level": "DEBUG"},
        "lex": {"handlers": ["file", "console"], "level": "DEBUG"},
        "symmetry": {"handlers": ["file", "console"], "level": "DEBUG"},
        "shifting": {"handlers": ["file", "console"], "level": "DEBUG"},
        "fraclex": {"handlers": ["file", "console"], "level": "DEBUG"},
        "search": {"handlers": ["file", "console"], "level": "DEBUG"},
        "cli": {"handlers": ["file", "console"], "level": "DEBUG"},
    },
}
