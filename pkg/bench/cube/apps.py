from django.apps import AppConfig


class CubeConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "cube"
