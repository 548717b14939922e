"""
Django settings for the paracourant project.

The project has no web surface and no database: it is a set of apps exposing exact
Courant-algebroid computations through services and the ``courant`` management command.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path

from dotenv import load_dotenv


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# Load environment file (.env)
load_dotenv(BASE_DIR / ".env")


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "unsafe-default")

DEBUG = os.getenv("DJANGO_DEBUG", "False").lower() in ("1", "true", "yes")

ALLOWED_HOSTS = ["localhost", "127.0.0.1"]


# Application definition

INSTALLED_APPS = [
    "apps.core",
    "apps.scalars",
    "apps.cartan",
    "apps.lie",
    "apps.courant",
    "apps.scenarios",
]

# Nothing is persisted; reports are plain JSON files.
DATABASES = {}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# ========================================
# Verification defaults
# ========================================

COURANT = {
    # seed for generated families and random samples
    "SEED": int(os.getenv("COURANT_SEED", "20240601")),
    # degree bound of the monomial families used by universally quantified checks
    "DEGREE_BOUND": int(os.getenv("COURANT_DEGREE", "2")),
    "RANDOM_SECTIONS": int(os.getenv("COURANT_RANDOM_SECTIONS", "25")),
    "SCHEMA_DIR": BASE_DIR / "apps" / "scenarios" / "schemas",
}


# ========================================
# Logging
# ========================================

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "{levelname} {name}: {message}", "style": "{"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "plain"},
    },
    "loggers": {
        "apps": {
            "handlers": ["console"],
            "level": os.getenv("COURANT_LOG_LEVEL", "WARNING").upper(),
            "propagate": False,
        },
    },
}
