from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent.parent

FIXTURES_DIR = BASE_DIR / "fixtures"


SECRET_KEY = "sentilex-offline-toolkit"

DEBUG = False

ALLOWED_HOSTS = []


DJANGO_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
]


THIRD_PARTY_APPS = [
    "rest_framework",
]

LOCAL_APPS = [
    "sentilex.lexicon",
    "sentilex.taxonomy",
    "sentilex.dictionary",
    "sentilex.corpus",
    "sentilex.harvest",
    "sentilex.evaluation",
    "sentilex.toolkit",
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS


# Nothing is persisted; the database is only declared so that the app
# registry and the test runner have something to point at.
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}


LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True
