from django.urls import path

from .views import run_analysis

urlpatterns = [
    path('analysis/<str:command>/', run_analysis, name='run-analysis'),
]
