"""
branching_extremes URL Configuration.

Only the Django admin is served; it is used to browse recorded experiment runs.
"""

from django.contrib import admin
from django.urls import path

admin.autodiscover()

urlpatterns = [
    path('admin/', admin.site.urls),
]
