from django.apps import AppConfig


class PrrConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'prr'
