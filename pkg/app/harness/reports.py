"""
Report rendering and output files.

Data reports carry no timings, so identical inputs give identical bytes;
timings go to the manifest written beside them.
"""
import csv
import logging
from datetime import datetime, timezone
from pathlib import Path

from django.conf import settings
from rest_framework.renderers import JSONRenderer

from harness.serializers import RunManifestSerializer


logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MANIFEST_SUFFIX = '.manifest.json'


def build_report(command, parameters, results):
    return {
        'schema_version': SCHEMA_VERSION,
        'command': command,
        'parameters': parameters,
        'results': results,
    }


def render_json(data):
    """Strict JSON with two-space indent and a trailing newline"""
    return JSONRenderer().render(data, renderer_context={'indent': 2}) \
        + b'\n'


def resolve_path(path):
    """Relative paths are taken from the configured output directory"""
    return Path(settings.HARNESS['OUTPUT_DIR']) / path


def write_csv(path, header, rows):
    """Floats are written as their shortest round-trip repr"""
    path = resolve_path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(
            [repr(float(value)) if isinstance(value, float) else value
             for value in row]
            for row in rows
        )
    logger.info('Wrote %s', path)
    return path


def write_json(path, data):
    path = resolve_path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(render_json(data))
    logger.info('Wrote %s', path)
    return path


def manifest_data(parameters, started, elapsed, outputs):
    serializer = RunManifestSerializer({
        'config': parameters,
        'version': settings.HARNESS['VERSION'],
        'timings': {'elapsed_seconds': elapsed},
        'started': started.astimezone(timezone.utc).isoformat(),
        'outputs': [str(path) for path in outputs],
    })
    return serializer.data


def write_manifest(parameters, started, elapsed, outputs):
    """Write <first output>.manifest.json listing every output once"""
    outputs = list(dict.fromkeys(outputs))
    if not outputs:
        return None
    path = outputs[0].with_name(outputs[0].name + MANIFEST_SUFFIX)
    data = manifest_data(parameters, started, elapsed, outputs)
    path.write_bytes(render_json(data))
    return path


def now():
    return datetime.now(timezone.utc)
