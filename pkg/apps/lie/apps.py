from django.apps import AppConfig


class LieConfig(AppConfig):
    name = "apps.lie"
    verbose_name = "Lie algebras, bialgebras and Manin triples"
