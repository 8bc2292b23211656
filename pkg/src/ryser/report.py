"""Machine-checkable JSON reports with embedded certificates.

Every CLI run can emit a report: tool version, input digests, the exact
command parameters, one entry per check with status and certificate
payload, and an overall status.  Certificates embed the witnesses
themselves (covers, matchings, enumerations, mappings), so a report can
be re-validated against its input file offline without rerunning any
search; `recheck_report` does exactly that.
"""

import hashlib
import json
import os
import time

from . import __version__
from .hypergraph import atomic_write_text, parse_vid, read_rhg, vid_str

SCHEMA_ID = "ryser-report/1"

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "tool", "command", "parameters", "inputs", "checks", "overall"],
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "tool": {
            "type": "object",
            "required": ["name", "version"],
            "properties": {
                "name": {"type": "string"},
                "version": {"type": "string"},
            },
        },
        "command": {"type": "string"},
        "parameters": {"type": "object"},
        "inputs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["path", "sha256"],
                "properties": {
                    "path": {"type": "string"},
                    "sha256": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
                },
            },
        },
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status"],
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "skipped", "timeout"]},
                    "wall_time_s": {"type": "number"},
                },
            },
        },
        "overall": {"enum": ["pass", "fail", "skipped", "timeout"]},
    },
}


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path) -> str:
    with open(path, "rb") as fh:
        return sha256_bytes(fh.read())


class Check:
    """One named check: time it, record status and certificate."""

    def __init__(self, name):
        self.name = name
        self.status = "skipped"
        self.certificate = None
        self.detail = None
        self._t0 = None
        self.wall_time_s = 0.0

    def __enter__(self):
        self._t0 = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.wall_time_s = round(time.monotonic() - self._t0, 6)
        return False

    def ok(self, condition, certificate=None, detail=None):
        self.status = "pass" if condition else "fail"
        self.certificate = certificate
        self.detail = detail
        return condition

    def skip(self, detail=None, certificate=None):
        self.status = "skipped"
        self.detail = detail
        self.certificate = certificate

    def timeout(self, detail=None):
        self.status = "timeout"
        self.detail = detail

    def as_dict(self):
        out = {"name": self.name, "status": self.status, "wall_time_s": self.wall_time_s}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def overall_status(checks) -> str:
    statuses = [c["status"] if isinstance(c, dict) else c.status for c in checks]
    if "fail" in statuses:
        return "fail"
    if "timeout" in statuses:
        return "timeout"
    if "pass" in statuses:
        return "pass"
    return "skipped"


def make_report(command, parameters, inputs, checks):
    check_dicts = [c.as_dict() if isinstance(c, Check) else c for c in checks]
    return {
        "schema": SCHEMA_ID,
        "tool": {"name": "ryser", "version": __version__},
        "command": command,
        "parameters": parameters,
        "inputs": inputs,
        "checks": check_dicts,
        "overall": overall_status(check_dicts),
    }


def input_entry(path) -> dict:
    return {"path": os.fspath(path), "sha256": sha256_file(path)}


def write_json_atomic(path, obj):
    atomic_write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


# --- certificate payload builders ---


def cover_certificate(res, include_enumeration=True):
    out = {
        "kind": "cover",
        "tau": res.tau,
        "witness": [vid_str(v) for v in res.witness],
    }
    if include_enumeration and res.all_min_covers is not None:
        out["all_min_covers"] = [
            [vid_str(v) for v in cover] for cover in res.all_min_covers
        ]
    return out


def matching_certificate(res):
    return {"kind": "matching", "nu": res.nu, "witness_edges": list(res.witness)}


def ratio_certificate(rep):
    return {
        "kind": "ratio",
        "r": rep.r,
        "tau": rep.tau,
        "nu": rep.nu,
        "ratio": rep.ratio,
        "is_ryser_extremal": rep.is_ryser_extremal,
    }


def intersecting_certificate(ok, witness):
    out = {"kind": "intersecting", "intersecting": ok}
    if witness is not None:
        out["disjoint_pair"] = list(witness)
    return out


# --- offline re-validation ---


def _check_cover_cert(cert, h, problems, where):
    witness = [parse_vid(t) for t in cert["witness"]]
    if len(witness) != cert["tau"]:
        problems.append(f"{where}: witness size differs from tau")
    wset = set(witness)
    if not all(wset & set(e) for e in h.edges):
        problems.append(f"{where}: witness does not cover every edge")
    for i, cov in enumerate(cert.get("all_min_covers", [])):
        cset = {parse_vid(t) for t in cov}
        if len(cset) != cert["tau"]:
            problems.append(f"{where}: enumerated cover {i} has wrong size")
        if not all(cset & set(e) for e in h.edges):
            problems.append(f"{where}: enumerated cover {i} does not cover")


def _check_matching_cert(cert, h, problems, where):
    masks = h.edge_masks
    used = 0
    for ei in cert["witness_edges"]:
        if masks[ei] & used:
            problems.append(f"{where}: witness edges are not disjoint")
            return
        used |= masks[ei]
    if len(cert["witness_edges"]) != cert["nu"]:
        problems.append(f"{where}: witness size differs from nu")


def recheck_report(report, base_dir="."):
    """Re-verify a report's digests and certificates against its input
    files.  Witness validity is checked directly; search optimality is
    not re-proved.  Returns a list of problems (empty = consistent)."""
    problems = []
    hypergraphs = {}
    for entry in report.get("inputs", []):
        path = entry["path"]
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        if not os.path.exists(path):
            problems.append(f"input {entry['path']} missing")
            continue
        digest = sha256_file(path)
        if digest != entry["sha256"]:
            problems.append(f"input {entry['path']} digest mismatch")
            continue
        if path.endswith(".rhg"):
            hypergraphs[entry["path"]] = read_rhg(path)
    h = next(iter(hypergraphs.values()), None)
    for chk in report.get("checks", []):
        cert = chk.get("certificate")
        if not isinstance(cert, dict) or chk["status"] != "pass":
            continue
        where = chk["name"]
        kind = cert.get("kind")
        if kind == "cover" and h is not None:
            _check_cover_cert(cert, h, problems, where)
        elif kind == "matching" and h is not None:
            _check_matching_cert(cert, h, problems, where)
        elif kind == "ratio":
            extremal = cert["tau"] == (cert["r"] - 1) * cert["nu"]
            if cert["is_ryser_extremal"] != extremal:
                problems.append(f"{where}: extremality flag inconsistent")
        elif kind == "intersecting" and h is not None:
            if cert["intersecting"] is False:
                i, j = cert["disjoint_pair"]
                if set(h.edges[i]) & set(h.edges[j]):
                    problems.append(f"{where}: claimed disjoint pair intersects")
    return problems
