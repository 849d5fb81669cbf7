import hashlib
import json
import logging
from pathlib import Path

from django.conf import settings
from django.core.cache.backends.filebased import FileBasedCache

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def canonical_json(payload):
    return json.dumps(payload, sort_keys=True, separators=(',', ':'), ensure_ascii=True)


def content_hash(payload):
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


class ResultStore:
    """
    Content-addressed on-disk cache of computed records.

    Records are plain JSON-compatible dicts. Keys are the md5 of the canonical
    JSON of ``(kind, schema version, request)``, so the directory can be
    deleted at any time without losing anything but time.
    """

    def __init__(self, location=None, enabled=True):
        self.location = Path(location or settings.COVERTQFT_CACHE)
        self.enabled = enabled
        self._backend = None

    @classmethod
    def disabled(cls):
        return cls(enabled=False)

    @property
    def backend(self):
        if self._backend is None:
            self._backend = FileBasedCache(
                str(self.location),
                {'TIMEOUT': None, 'OPTIONS': {'MAX_ENTRIES': 100000}},
            )
        return self._backend

    @staticmethod
    def make_key(kind, request):
        description = canonical_json({'kind': kind, 'schema': SCHEMA_VERSION, 'request': request})
        return f'covertqft_{kind}_{hashlib.md5(description.encode()).hexdigest()}'

    def get(self, kind, request):
        if not self.enabled:
            return None
        key = self.make_key(kind, request)
        record = self.backend.get(key)
        if record is None:
            logger.debug('cache miss %s %s', kind, canonical_json(request))
        else:
            logger.debug('cache hit %s %s', kind, canonical_json(request))
        return record

    def set(self, kind, request, record):
        if not self.enabled:
            return
        self.backend.set(self.make_key(kind, request), record, None)

    def clear(self):
        if self.location.exists():
            self.backend.clear()
            logger.info('cleared result cache at %s', self.location)
