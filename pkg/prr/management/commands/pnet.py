from django.core.management.base import BaseCommand, CommandError

from nets.exceptions import NetError
from prr.cli import add_arguments, run


class Command(BaseCommand):
    help = 'Analiza una red de Petri ponderada (vivacidad, reversibilidad, PR = R...)'

    def add_arguments(self, parser):
        add_arguments(parser)

    def handle(self, *args, **options):
        try:
            code = run(options, self.stdout)
        except (NetError, OSError) as exc:
            raise CommandError(str(exc), returncode=2)
        if code:
            raise CommandError('resultado indeterminado o discrepancias', returncode=code)
