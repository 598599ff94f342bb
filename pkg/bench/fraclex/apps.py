from django.apps import AppConfig


class FraclexConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "fraclex"
