"""
Django settings for the paraproduct harness.

The project has no web surface: Django supplies the settings layer,
management commands, logging configuration and the test runner.

For more information on this file, see
https://docs.djangoproject.com/en/5.0/topics/settings/
"""

import os
from pathlib import Path


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# Required by Django even though nothing here is signed.
SECRET_KEY = os.environ.get(
    'HARNESS_SECRET_KEY',
    'paraproduct-harness-not-a-secret'
)

DEBUG = bool(int(os.environ.get('HARNESS_DEBUG', 0)))

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'core',
    'dynamics',
    'martingale',
    'paraproduct',
    'experiments',
    'harness',
]


# No database: every computation is in memory.

DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.0/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Logging
# https://docs.djangoproject.com/en/5.0/topics/logging/

LOG_LEVEL = os.environ.get('HARNESS_LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        }
        for app in (
            'core',
            'dynamics',
            'martingale',
            'paraproduct',
            'experiments',
            'harness',
        )
    },
}


REST_FRAMEWORK = {
    'STRICT_JSON': True,
}


# Experiment harness defaults

HARNESS = {
    'VERSION': '1.0.0',
    'DEFAULT_TRIALS': int(os.environ.get('HARNESS_TRIALS', 1000)),
    'DEFAULT_DRAWS': int(os.environ.get('HARNESS_DRAWS', 100)),
    'WORKERS': int(os.environ.get('HARNESS_WORKERS', 4)),
    'RATIO_CAP': 10.0,
    'OUTPUT_DIR': Path(os.environ.get('HARNESS_OUTPUT_DIR', '.')),
    'SWEEP_RANGE': (4, 20),
}
