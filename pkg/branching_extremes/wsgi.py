"""
WSGI entry point for the run-browsing admin.

It exposes the WSGI callable as a module-level variable named ``application``.
"""
import os

from django.conf import settings
from django.contrib.staticfiles.handlers import StaticFilesHandler
from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'branching_extremes.settings.production')

application = get_wsgi_application()  # pylint: disable=invalid-name

# Admin css under a plain gunicorn in development.
if settings.DEBUG:
    application = StaticFilesHandler(application)
