from django.apps import AppConfig


class ScenariosConfig(AppConfig):
    name = "apps.scenarios"
    verbose_name = "Scenario catalog, suites and reports"
