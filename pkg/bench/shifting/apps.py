from django.apps import AppConfig


class ShiftingConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "shifting"
