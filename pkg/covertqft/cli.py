"""
Plumbing shared by the covertqft management commands.

Every command validates its flags with a DRF serializer, runs, and writes a
record to stdout either as indented JSON or as aligned text. Usage errors
exit with status 2 and failed verifications with status 1.
"""
import logging
from dataclasses import dataclass, field, replace

from django.core.management.base import BaseCommand, CommandError
from rest_framework.renderers import JSONRenderer

from .exceptions import CoverTQFTError, InternalConsistencyError
from .store import ResultStore

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
VERIFICATION_FAILURE = 1


@dataclass(frozen=True)
class RunConfig:
    """The validated flags of one command run."""

    command: str
    format: str = 'json'
    order: int = 16
    jobs: int = 1
    cache_dir: str = None
    no_cache: bool = False
    options: dict = field(default_factory=dict)

    @classmethod
    def from_validated(cls, command, validated):
        shared = {name: validated[name] for name in ('format', 'order', 'jobs') if name in validated}
        options = {k: v for k, v in validated.items()
                   if k not in ('format', 'order', 'jobs', 'cache_dir', 'no_cache')}
        return cls(
            command=command,
            cache_dir=validated.get('cache_dir'),
            no_cache=validated.get('no_cache', False),
            options=options,
            **shared,
        )

    def __getitem__(self, name):
        return self.options[name]

    def get(self, name, default=None):
        return self.options.get(name, default)

    def defaults(self):
        """The same run with the restrictions to one degree or genus dropped."""
        return replace(self, options={k: v for k, v in self.options.items() if k not in ('d', 'g')})

    def store(self):
        if self.no_cache:
            return ResultStore.disabled()
        return ResultStore(self.cache_dir)


def format_errors(errors):
    """Flatten DRF validation errors into one line per field."""
    lines = []
    for name, messages in errors.items():
        if not isinstance(messages, (list, tuple)):
            messages = [messages]
        text = '; '.join(str(m) for m in messages)
        lines.append(text if name == 'non_field_errors' else f'{name}: {text}')
    return '\n'.join(lines)


def render_json(data):
    return JSONRenderer().render(data, renderer_context={'indent': 2}).decode()


class CoverTQFTCommand(BaseCommand):
    """
    Base class of the covertqft commands.

    Subclasses set ``request_serializer_class``, add their own flags in
    ``add_command_arguments`` and implement ``run`` (returning the record)
    and ``render_text``.
    """

    request_serializer_class = None

    def add_arguments(self, parser):
        self.add_command_arguments(parser)
        parser.add_argument('--format', help='Output format: json (default) or text')
        parser.add_argument('--cache-dir', dest='cache_dir', help='Result cache directory')
        parser.add_argument('--no-cache', dest='no_cache', action='store_true',
                            help='Neither read nor write the result cache')
        parser.add_argument('--jobs', type=int, help='Worker pool size')

    def add_command_arguments(self, parser):
        pass

    def request_data(self, options):
        """The flags actually given, keyed by serializer field name."""
        names = self.request_serializer_class().fields.keys()
        return {name: options[name] for name in names
                if options.get(name) is not None and options.get(name) is not False}

    def handle(self, *args, **options):
        if options.get('verbosity', 1) > 1:
            logging.getLogger('covertqft').setLevel(logging.DEBUG)
        serializer = self.request_serializer_class(data=self.request_data(options))
        if not serializer.is_valid():
            raise CommandError(format_errors(serializer.errors), returncode=USAGE_ERROR)
        config = RunConfig.from_validated(self.command_name(), serializer.validated_data)
        try:
            data = self.run(config)
        except InternalConsistencyError:
            raise
        except CoverTQFTError as exc:
            raise CommandError(str(exc), returncode=USAGE_ERROR) from exc
        self.emit(data, config)
        self.after_emit(data, config)

    def command_name(self):
        return self.__class__.__module__.rsplit('.', 1)[-1]

    def run(self, config):
        raise NotImplementedError('subclasses of CoverTQFTCommand must provide a run() method')

    def render_text(self, data):
        raise NotImplementedError('subclasses of CoverTQFTCommand must provide a render_text() method')

    def emit(self, data, config):
        if config.format == 'json':
            self.stdout.write(render_json(data))
        else:
            for line in self.render_text(data):
                self.stdout.write(line)

    def after_emit(self, data, config):
        pass


def aligned(rows):
    """Left-align the columns of a list of string rows."""
    if not rows:
        return []
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return ['  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows]
