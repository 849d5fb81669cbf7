"""
Django settings for config project.

Generated by 'django-admin startproject' using Django 5.2.7.

For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
from decouple import config, Csv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# Quick-start development settings - unsuitable for production
# See https://docs.djangoproject.com/en/5.2/howto/deployment/checklist/

# Nothing is served or signed, the key only has to exist.
SECRET_KEY = config('SECRET_KEY', default='covertqft-local-only')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost,127.0.0.1', cast=Csv())


# Application definition

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'rest_framework',
    'covertqft',
]

MIDDLEWARE = []


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases

# Results are kept in the file cache below, never in a database.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Django REST Framework Configuration
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
}


# Cover TQFT engine
COVERTQFT_CACHE = config('COVERTQFT_CACHE', default=str(BASE_DIR / '.covertqft-cache'))
COVERTQFT_ORDER = config('COVERTQFT_ORDER', default=16, cast=int)
COVERTQFT_JOBS = config('COVERTQFT_JOBS', default=1, cast=int)

# Largest d accepted by each command: partitions, chartable, hurwitz, bruteforce
_caps = config('COVERTQFT_CAPS', default='30,12,12,4', cast=Csv(cast=int))
COVERTQFT_CAPS = dict(zip(('partitions', 'chartable', 'hurwitz', 'bruteforce'), _caps))


# Logging
# https://docs.djangoproject.com/en/5.2/topics/logging/

LOG_LEVEL = config('LOG_LEVEL', default='WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'covertqft': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}
