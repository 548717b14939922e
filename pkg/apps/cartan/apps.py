from django.apps import AppConfig


class CartanConfig(AppConfig):
    name = "apps.cartan"
    verbose_name = "Polynomial Cartan calculus"
