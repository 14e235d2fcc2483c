"""Versioned JSON scheme files.

Exact rationals are serialized as decimal-digit strings "p/q" of arbitrary
length, never as floats, so a file round-trips losslessly on every exact
field.  Unknown fields are ignored on read.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import InvalidParam
from .exactnum import format_rational, max_bit_size, parse_rational
from .solver import CouplingScheme
from .spectra import Parity, Spectrum

FORMAT_VERSION = 1


def spectrum_to_dict(spec: Spectrum, provenance: dict | None = None) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "n_sites": spec.n_sites,
        "parity": spec.parity.value,
        "spectrum": [format_rational(x) for x in spec.positive_levels],
        "provenance": provenance or {},
        "bit_size_max": max_bit_size(spec.positive_levels),
    }


def scheme_to_dict(scheme: CouplingScheme, provenance: dict | None = None) -> dict:
    data = spectrum_to_dict(scheme.source_spectrum, provenance)
    data["n_sites"] = scheme.n_sites
    data["couplings_squared"] = [format_rational(x) for x in scheme.couplings_squared]
    data["couplings_float"] = list(scheme.couplings_float)
    data["bit_size_max"] = max_bit_size(
        tuple(scheme.source_spectrum.positive_levels) + tuple(scheme.couplings_squared)
    )
    return data


def spectrum_from_dict(data: dict) -> Spectrum:
    try:
        parity = Parity.from_label(data["parity"])
        levels = [parse_rational(s) for s in data["spectrum"]]
        spec = Spectrum.from_levels(levels, parity)
    except (KeyError, TypeError) as exc:
        raise InvalidParam(f"malformed spectrum section: {exc}") from exc
    if "n_sites" in data and int(data["n_sites"]) != spec.n_sites:
        raise InvalidParam(
            f"n_sites field {data['n_sites']} disagrees with spectrum size {spec.n_sites}"
        )
    return spec


def scheme_from_dict(data: dict) -> CouplingScheme:
    spec = spectrum_from_dict(data)
    try:
        squared = tuple(parse_rational(s) for s in data["couplings_squared"])
    except KeyError as exc:
        raise InvalidParam("file has no couplings (spectrum-only?)") from exc
    except TypeError as exc:
        raise InvalidParam(f"malformed couplings: {exc}") from exc
    n = spec.n_sites
    if len(squared) != n - 1:
        raise InvalidParam(f"expected {n - 1} couplings, got {len(squared)}")
    scheme = CouplingScheme(
        n_sites=n,
        couplings_squared=squared,
        couplings_float=tuple(math.sqrt(float(c)) for c in squared),
        source_spectrum=spec,
    )
    scheme.as_operator()  # raises InvalidParam on non-mirror or non-positive data
    return scheme


def save_json(path, data: dict) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def load_json(path) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidParam(f"cannot read scheme file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidParam(f"scheme file {path} does not hold a JSON object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise InvalidParam(f"unsupported format_version {version!r}")
    return data
