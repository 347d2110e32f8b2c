from django.urls import path

from .views import fixture_detail, fixture_list

urlpatterns = [
    path('fixtures/', fixture_list, name='fixture-list'),
    path('fixtures/<str:key>/', fixture_detail, name='fixture-detail'),
]
