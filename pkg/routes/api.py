from django.urls import include, path

urlpatterns = [
    path('', include('nets.urls')),
    path('', include('prr.urls')),
]
