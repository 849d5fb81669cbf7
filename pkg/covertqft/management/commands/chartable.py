import logging

from covertqft.cli import CoverTQFTCommand, aligned
from covertqft.serializers import CharacterTableSerializer, ChartableRequestSerializer
from covertqft.symchar import character_table

logger = logging.getLogger(__name__)


class Command(CoverTQFTCommand):
    help = 'Print the character table of S_d, rows and columns in canonical order'

    request_serializer_class = ChartableRequestSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('d', type=int, help='Degree of the symmetric group')
        parser.add_argument('--csv', help='Also write the table as CSV to this path')

    def run(self, config):
        table = character_table(config['d'], jobs=config.jobs, store=config.store())
        if config.get('csv'):
            with open(config['csv'], 'w', newline='') as stream:
                table.write_csv(stream)
            logger.info('wrote character table of S_%s to %s', config['d'], config['csv'])
        return CharacterTableSerializer(table.as_record()).data

    def render_text(self, data):
        header = ['rho\\eta'] + data['cols']
        body = [[rho] + [str(x) for x in row] for rho, row in zip(data['rows'], data['matrix'])]
        yield from aligned([header] + body)
