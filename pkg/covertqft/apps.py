from django.apps import AppConfig


class CovertqftConfig(AppConfig):
    name = 'covertqft'
    verbose_name = 'Cover TQFT engine'
