"""Online PTZ tracking simulator: camera geometry, metrics, prediction and runs."""

import json
from pathlib import Path

from . import _core
from ._core import (
    BoundingBox,
    CameraPose,
    DataError,
    Error,
    InsufficientHistory,
    InvalidArgument,
    SphericalPoint,
    angular_distance,
    backproject,
    bor,
    next_processed_frame,
    predict_displacement,
    project,
    rank,
    score,
    tracker_names,
)

__version__ = _core.version()

CONFIG_DEFAULTS = json.loads(_core.default_config_json())


def synthetic_spec(**overrides):
    """Synthetic sequence spec with defaults; keys follow the run manifest."""
    spec = json.loads(_core.default_synthetic_json())
    unknown = set(overrides) - set(spec)
    if unknown:
        raise ValueError(f"unknown synthetic spec keys: {sorted(unknown)}")
    spec.update(overrides)
    return spec


def _config(config):
    config = dict(config or {})
    unknown = set(config) - set(CONFIG_DEFAULTS)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return json.dumps(config)


def simulate(tracker, sequence, config=None):
    """Run one tracker over a synthetic spec (dict) or a dataset directory.

    Returns the aggregate metrics plus per-frame records and the delay totals.
    """
    if isinstance(sequence, dict):
        return _core.simulate_synthetic(json.dumps(sequence), tracker, _config(config))
    return _core.simulate_dataset(Path(sequence), tracker, _config(config))


def run(trackers, out_dir, synthetic=(), datasets=(), config=None, seed=1, jobs=1):
    """Batch run writing the same files as the command-line `run`. Returns (exit code, log)."""
    manifest = {
        "trackers": list(trackers),
        "datasets": [str(d) for d in datasets],
        "synthetic": list(synthetic),
        "seed": seed,
        "config": json.loads(_config(config)),
    }
    return _core.run_manifest(json.dumps(manifest), Path(out_dir), jobs)


def rerun(manifest_path, out_dir, jobs=1):
    """Re-execute a manifest.json written by a previous run."""
    return _core.run_manifest(Path(manifest_path).read_text(), Path(out_dir), jobs)


def table(results_dir):
    """Ranked table text for a results directory. Returns (exit code, stdout, stderr)."""
    return _core.table(Path(results_dir))


def generate(spec, out_dir):
    """Write a synthetic sequence in the dataset layout. Returns (exit code, stderr)."""
    return _core.generate(json.dumps(spec), Path(out_dir))
