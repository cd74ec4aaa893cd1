from django.apps import AppConfig


class LexiconConfig(AppConfig):
    name = "sentilex.lexicon"
