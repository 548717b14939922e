import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "paracourant.settings")
django.setup()
