"""Persistence: ensemble files, deterministic JSON/CSV artifacts, configs.

Ensemble file layout (format "nlsim-ensemble", version 1): one UTF-8 JSON
header line terminated by a newline, then count * (N+1) coefficients as
little-endian float64 pairs (re, im) in row-major sample order.  Every
artifact embeds the canonical config hash and a format version so reports
can refuse mismatched inputs.  Identical configs must produce byte-identical
files: JSON is dumped with sorted keys and repr floats, CSV uses repr floats.
"""

from __future__ import annotations

import hashlib
import json
import os

import numpy as np

from .basis import BasisSpec
from .measures import Ensemble

FORMAT_VERSION = 1

__all__ = [
    "FORMAT_VERSION",
    "config_hash",
    "dump_json",
    "write_json",
    "write_csv",
    "write_ensemble",
    "read_ensemble",
]


def _canon(obj):
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in sorted(obj.items())}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_canon(v) for v in obj.tolist()]
    return obj


def dump_json(obj) -> str:
    return json.dumps(_canon(obj), sort_keys=True, separators=(",", ":"),
                      allow_nan=True)


def config_hash(config: dict) -> str:
    return hashlib.sha256(dump_json(config).encode()).hexdigest()[:16]


def write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(obj))
        fh.write("\n")


def write_csv(path: str, columns: dict) -> None:
    """Write named columns (equal-length sequences) with repr floats."""
    names = list(columns)
    rows = zip(*[columns[n] for n in names])
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(names) + "\n")
        for row in rows:
            fh.write(",".join(repr(float(v)) if isinstance(v, (float, np.floating))
                              else str(v) for v in row) + "\n")


def write_ensemble(path: str, ensemble: Ensemble, cfg_hash: str = "") -> None:
    header = {
        "format": "nlsim-ensemble",
        "version": FORMAT_VERSION,
        "N": ensemble.spec.N,
        "M": ensemble.spec.M,
        "d": ensemble.spec.d,
        "count": ensemble.count,
        "seed": ensemble.seed,
        "params": ensemble.meta.get("params"),
        "config_hash": cfg_hash,
    }
    payload = np.empty((ensemble.count, ensemble.spec.N + 1, 2))
    payload[:, :, 0] = ensemble.coeffs.real
    payload[:, :, 1] = ensemble.coeffs.imag
    with open(path, "wb") as fh:
        fh.write(dump_json(header).encode())
        fh.write(b"\n")
        fh.write(payload.astype("<f8").tobytes())


def read_ensemble(path: str) -> tuple[Ensemble, dict]:
    with open(path, "rb") as fh:
        header_line = fh.readline()
        raw = fh.read()
    header = json.loads(header_line.decode())
    if header.get("format") != "nlsim-ensemble":
        raise ValueError(f"{path}: not an ensemble file")
    if header.get("version") != FORMAT_VERSION:
        raise ValueError(f"{path}: format version {header.get('version')} != {FORMAT_VERSION}")
    count, N = header["count"], header["N"]
    flat = np.frombuffer(raw, dtype="<f8")
    if flat.size != count * (N + 1) * 2:
        raise ValueError(f"{path}: payload size mismatch")
    pairs = flat.reshape(count, N + 1, 2)
    coeffs = pairs[:, :, 0] + 1j * pairs[:, :, 1]
    coeffs.setflags(write=False)
    spec = BasisSpec(d=header["d"], N=N, M=header.get("M", 0))
    ens = Ensemble(coeffs=coeffs, seeds=np.arange(count, dtype=np.uint64),
                   seed=header["seed"], spec=spec,
                   meta={"params": header.get("params")})
    return ens, header


def ensure_out_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
