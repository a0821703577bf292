from django.apps import AppConfig


class ParaproductConfig(AppConfig):
    name = 'paraproduct'
    verbose_name = 'Paraproducts and double averages'
