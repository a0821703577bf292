from django.apps import AppConfig


class MartingaleConfig(AppConfig):
    name = 'martingale'
    verbose_name = 'Backward martingales and square functions'
