from covertqft.cli import CoverTQFTCommand, aligned
from covertqft.partitions import enumerate_partitions
from covertqft.serializers import PartitionsRequestSerializer, PartitionTableSerializer


class Command(CoverTQFTCommand):
    help = 'List the partitions of d with hooklengths, content, n-function, dim and q_dim'

    request_serializer_class = PartitionsRequestSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('d', type=int, help='Size of the partitions')

    def run(self, config):
        rows = enumerate_partitions(config['d'])
        table = {'d': config['d'], 'count': len(rows), 'rows': rows}
        return PartitionTableSerializer(table).data

    def render_text(self, data):
        header = ['partition', 'hooks', 'content', 'n', 'dim', 'q_dim']
        body = [
            [row['partition'], ','.join(str(h) for h in row['hooklengths']),
             str(row['content']), str(row['n']), str(row['dim']), row['q_dim']]
            for row in data['rows']
        ]
        yield self.style.SUCCESS(f"{data['count']} partitions of {data['d']}")
        yield from aligned([header] + body)
