import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "unsafe-secret")
DEBUG = os.getenv("DEBUG", "0") == "1"
ALLOWED_HOSTS = os.getenv("ALLOWED_HOSTS", "*").split(",")

INSTALLED_APPS = [
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.staticfiles",
    "rest_framework",
    "drf_spectacular",
    "core",
    "nets",
    "algebra",
    "structure",
    "behavior",
    "prr",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
    "core.monitoring.MonitoringMiddleware",
]

ROOT_URLCONF = "core.urls"

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.debug",
                "django.template.context_processors.request",
            ],
        },
    },
]

WSGI_APPLICATION = "core.wsgi.application"

# Los análisis no persisten nada; SQLite basta para que Django arranque
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": os.getenv("DB_NAME", str(BASE_DIR / "db.sqlite3")),
    }
}

REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": (),
    "DEFAULT_PERMISSION_CLASSES": ("rest_framework.permissions.AllowAny",),
    "DEFAULT_SCHEMA_CLASS": "drf_spectacular.openapi.AutoSchema",
}

LANGUAGE_CODE = "es"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

STATIC_URL = "/static/"
STATIC_ROOT = BASE_DIR / "staticfiles"

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

SPECTACULAR_SETTINGS = {
    "TITLE": "PR-R Toolkit API",
    "DESCRIPTION": (
        "Análisis de redes de Petri ponderadas: alcanzabilidad, "
        "vivacidad, reversibilidad e igualdad PR-R"
    ),
    "VERSION": "1.0.0",
    "SERVE_INCLUDE_SCHEMA": False,
}

# Cache: memoria local por defecto, Redis si está configurado
REDIS_URL = os.getenv("REDIS_URL", "")
REDIS_HOST = os.getenv("REDIS_HOST", "")
REDIS_PORT = os.getenv("REDIS_PORT", "6379")
REDIS_DB = os.getenv("REDIS_DB", "0")

if REDIS_URL or REDIS_HOST:
    CACHES = {
        "default": {
            "BACKEND": "django_redis.cache.RedisCache",
            "LOCATION": REDIS_URL or f"redis://{REDIS_HOST}:{REDIS_PORT}/{REDIS_DB}",
            "OPTIONS": {
                "CLIENT_CLASS": "django_redis.client.DefaultClient",
            },
            "KEY_PREFIX": "prr_toolkit",
            "TIMEOUT": 300,
        }
    }
else:
    CACHES = {
        "default": {
            "BACKEND": "django.core.cache.backends.locmem.LocMemCache",
            "LOCATION": "prr-toolkit",
        }
    }

ANALYSIS_CACHE_TIMEOUT = int(os.getenv("ANALYSIS_CACHE_TIMEOUT", "600"))


def _optional_int(name):
    value = os.getenv(name, "")
    return int(value) if value else None


# Presupuestos de análisis (ver core/budgets.py)
ANALYSIS = {
    'EXPLORATION': {
        'MAX_STATES': int(os.getenv('ANALYSIS_MAX_STATES', '10000')),
        'MAX_TOKEN_BOUND': _optional_int('ANALYSIS_TOKEN_BOUND'),
        'MAX_SEQUENCE_LEN': int(os.getenv('ANALYSIS_MAX_SEQUENCE_LEN', '64')),
    },
    'FEASIBILITY': {
        'MAX_COMPONENT': int(os.getenv('ANALYSIS_Y_BOUND', '64')),
        'MAX_NODES': int(os.getenv('ANALYSIS_MAX_NODES', '20000')),
        'TIME_LIMIT': _optional_int('ANALYSIS_TIME_LIMIT'),
    },
    'MAX_SUBSETS': int(os.getenv('ANALYSIS_MAX_SUBSETS', str(1 << 16))),
    'MAX_CIRCUITS': int(os.getenv('ANALYSIS_MAX_CIRCUITS', '100000')),
    'MAX_T_MULTIPLE': int(os.getenv('ANALYSIS_MAX_T_MULTIPLE', '3')),
    'PR_BOUND': int(os.getenv('ANALYSIS_PR_BOUND', '8')),
}

ANALYSIS_LOG_FILE = os.getenv('ANALYSIS_LOG_FILE', '')
ANALYSIS_LOG_LEVEL = os.getenv('ANALYSIS_LOG_LEVEL', 'WARNING')

# Logging Configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': (
                '{levelname} {asctime} {module} {process:d} {thread:d} '
                '{message}'
            ),
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
        'analysis': {
            'handlers': ['console'],
            'level': ANALYSIS_LOG_LEVEL,
            'propagate': False,
        },
        'monitoring': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
}

if ANALYSIS_LOG_FILE:
    LOGGING['handlers']['analysis_file'] = {
        'class': 'logging.FileHandler',
        'filename': ANALYSIS_LOG_FILE,
        'formatter': 'verbose',
    }
    LOGGING['loggers']['analysis']['handlers'].append('analysis_file')
    LOGGING['loggers']['monitoring']['handlers'].append('analysis_file')

# Monitoring Configuration
MONITORING = {
    'ENABLED': os.getenv('MONITORING_ENABLED', '1') == '1',
    'METRICS_ENDPOINT': '/metrics',
}
