from django.apps import AppConfig


class LexConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "lex"
