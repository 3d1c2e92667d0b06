"""JSON report assembly.  All integers serialize as decimal strings (orbit
values overflow 64-bit consumers), dictionaries are emitted with sorted keys,
and the PRNG seed is recorded, so a report is byte-reproducible."""

from __future__ import annotations

import json
from importlib import resources

from .census import CensusReport, SpanReport
from .config import Config
from .primitive import PrimitiveExample
from .quadmap import QuadMapZ, StabilityCertificate


def intstr(x: int) -> str:
    return str(int(x))


def certificate_dict(cert: StabilityCertificate) -> dict:
    return {
        "kind": cert.kind,
        "evidence": {k: (intstr(v) if isinstance(v, int) else v) for k, v in cert.evidence.items()},
    }


def construction_report(
    n: int,
    m: int,
    s: int,
    f: QuadMapZ,
    certificates: list[StabilityCertificate],
    adjusted: list[int],
    reducibility_sample: dict[int, bool],
    seed: int,
) -> dict:
    return {
        "kind": "construction",
        "n": n,
        "m": intstr(m),
        "s": intstr(s),
        "gamma": intstr(f.gamma),
        "certificates": [certificate_dict(c) for c in certificates],
        "adjusted_sequence": [intstr(v) for v in adjusted],
        "reducibility_sample": {intstr(p): bool(v) for p, v in sorted(reducibility_sample.items())},
        "seed": seed,
    }


def ff_construction_report(field, n, m_coeffs, f, certificate, criterion, sample, seed) -> dict:
    return {
        "kind": "construction_ff",
        "field": {"p": field.p, "k": field.k, "modulus": list(getattr(field, "modulus", []) or [])},
        "n": n,
        "m": [_elt_json(c) for c in m_coeffs],
        "gamma": [_elt_json(c) for c in f.gamma.num.coeffs],
        "expanded": {
            "linear": [_elt_json(c) for c in f.expanded_coefficients()[1].num.coeffs],
            "constant": [_elt_json(c) for c in f.expanded_coefficients()[0].num.coeffs],
        },
        "valuation_certificate": certificate,
        "criterion_certified": criterion,
        "specialization_sample": sample,
        "seed": seed,
    }


def _elt_json(c):
    return list(c) if isinstance(c, tuple) else c


def primitive_report(example: PrimitiveExample, seed: int) -> dict:
    return {
        "kind": "primitive",
        "n": example.n,
        "m": intstr(example.map.m),
        "gamma": intstr(example.map.gamma),
        "aux_prime": intstr(example.aux_prime),
        "stability": certificate_dict(example.stability),
        "witness_prime": intstr(example.witness_prime) if example.witness_prime else None,
        "witness_skipped": example.witness_skipped,
        "reducibility_sample": {
            intstr(p): bool(v) for p, v in sorted(example.reducibility_spot_checks.items())
        },
        "seed": seed,
    }


def census_report(report: CensusReport, span: SpanReport | None, seed: int) -> dict:
    out = report.to_json_dict()
    out["span"] = span.to_json_dict() if span is not None else None
    out["seed"] = seed
    return out


def dump_report(obj: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def report_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_schema() -> dict:
    with resources.files("quadstab.schemas").joinpath("report.schema.json").open(
        "r", encoding="utf-8"
    ) as fh:
        return json.load(fh)
