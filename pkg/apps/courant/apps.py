from django.apps import AppConfig


class CourantConfig(AppConfig):
    name = "apps.courant"
    verbose_name = "Courant algebroids and para-Hermitian structures"
