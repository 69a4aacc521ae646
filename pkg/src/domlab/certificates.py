"""Serializable certificates for domination claims and non-coprime runs.

JSON layout (big integers are decimal strings)::

    {"kind": "dominating" | "total_dominating" | "noncoprime_run",
     "instance": {"sizes": [...]} | {"primes": [...]} | {"modulus": "858"},
     "vertices": [[0, 1], ...],          # coordinate tuples, or
     "residues": ["0", "1", ...],        # residues for an X_n instance
     "run": {"start": "2", "length": 3},
     "claimed_value": 4,
     "meta": {...}}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ._ntheory import factorize
from .errors import InvalidArgumentError, InvalidInstanceError, SchemaError
from .products import ProductGraph, SquarefreeModulus, residue_to_vertex, vertex_to_residue

KINDS = ("dominating", "total_dominating", "noncoprime_run")


@dataclass(frozen=True)
class Certificate:
    """A claimed dominating / total dominating set, or a non-coprime run.

    For a :class:`ProductGraph` instance ``vertices`` holds coordinate
    tuples; for a :class:`SquarefreeModulus` it holds residues in ``[0, n)``.
    """

    kind: str
    instance: ProductGraph | SquarefreeModulus
    vertices: tuple = ()
    run: tuple | None = None
    claimed_value: int | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown certificate kind {self.kind!r}")
        if self.kind == "noncoprime_run":
            if self.run is None:
                raise SchemaError("noncoprime_run certificate needs a run")
            if not isinstance(self.instance, SquarefreeModulus):
                raise SchemaError("noncoprime_run certificate needs a modulus instance")
            start, length = self.run
            object.__setattr__(self, "run", (int(start), int(length)))
            if self.run[1] < 0:
                raise SchemaError("run length must be nonnegative")
            return
        if not self.vertices:
            raise SchemaError(f"{self.kind} certificate needs a nonempty vertex list")
        try:
            if isinstance(self.instance, ProductGraph):
                vs = tuple(self.instance.check_vertex(v) for v in self.vertices)
            else:
                n = self.instance.n
                vs = tuple(int(r) for r in self.vertices)
                if any(not 0 <= r < n for r in vs):
                    raise InvalidArgumentError(f"residue out of range mod {n}")
        except (InvalidArgumentError, TypeError) as exc:
            raise SchemaError(str(exc)) from exc
        object.__setattr__(self, "vertices", vs)

    @property
    def size(self) -> int:
        """Number of distinct vertices (or residues) in the set."""
        return len(set(self.vertices))


def instance_to_dict(instance) -> dict:
    if isinstance(instance, ProductGraph):
        return {"sizes": list(instance.sizes)}
    return {"primes": [str(p) if p >= 2**53 else p for p in instance.primes]}


def instance_from_dict(d):
    if not isinstance(d, dict):
        raise SchemaError("instance must be an object")
    try:
        if "sizes" in d:
            return ProductGraph(tuple(int(x) for x in d["sizes"]))
        if "primes" in d:
            return SquarefreeModulus(tuple(int(p) for p in d["primes"]))
        if "modulus" in d:
            fac = factorize(int(d["modulus"]))
            if any(e > 1 for e in fac.values()):
                raise SchemaError(f"modulus {d['modulus']} is not squarefree")
            return SquarefreeModulus(tuple(fac))
    except (InvalidInstanceError, ValueError, TypeError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"bad instance {d}: {exc}") from exc
    raise SchemaError("instance needs one of 'sizes', 'primes', 'modulus'")


def certificate_to_dict(c: Certificate) -> dict:
    out = {"kind": c.kind, "instance": instance_to_dict(c.instance)}
    if c.kind != "noncoprime_run":
        if isinstance(c.instance, ProductGraph):
            out["vertices"] = [list(v) for v in c.vertices]
        else:
            out["residues"] = [str(r) for r in c.vertices]
    if c.run is not None:
        out["run"] = {"start": str(c.run[0]), "length": c.run[1]}
    if c.claimed_value is not None:
        out["claimed_value"] = c.claimed_value
    if c.meta:
        out["meta"] = c.meta
    return out


def certificate_from_dict(d) -> Certificate:
    if not isinstance(d, dict):
        raise SchemaError("certificate must be a JSON object")
    kind = d.get("kind")
    instance = instance_from_dict(d.get("instance"))
    try:
        vertices = ()
        if "residues" in d:
            if not isinstance(instance, SquarefreeModulus):
                raise SchemaError("residues need a modulus instance")
            vertices = tuple(int(r) for r in d["residues"])
        elif "vertices" in d:
            vertices = tuple(tuple(int(x) for x in v) for v in d["vertices"])
            if isinstance(instance, SquarefreeModulus):
                for v in vertices:
                    if len(v) != len(instance.primes) or any(
                        not 0 <= x < q for x, q in zip(v, instance.primes)
                    ):
                        raise SchemaError(f"vertex {list(v)} invalid for {instance}")
                vertices = tuple(vertex_to_residue(instance, v) for v in vertices)
        run = None
        if "run" in d:
            run = (int(d["run"]["start"]), int(d["run"]["length"]))
        claimed = d.get("claimed_value")
        if claimed is not None:
            claimed = int(claimed)
    except (TypeError, ValueError, KeyError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"malformed certificate: {exc}") from exc
    return Certificate(kind, instance, vertices, run, claimed, dict(d.get("meta", {})))


def dump_certificate(c: Certificate, path) -> None:
    Path(path).write_text(json.dumps(certificate_to_dict(c), indent=2) + "\n", encoding="utf-8")


def load_certificate(path) -> Certificate:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    return certificate_from_dict(data)


def as_tuples(c: Certificate) -> tuple:
    """Vertex tuples of a certificate, mapping residues through CRT."""
    if isinstance(c.instance, ProductGraph):
        return c.vertices
    return tuple(residue_to_vertex(c.instance, r) for r in c.vertices)
