"""Match-response payload shared by the HTTP API and the CLI's --json mode.

Both surfaces must emit byte-identical JSON for the same inputs, so the
payload construction and serialization live here and nowhere else.
"""

from __future__ import annotations

import json
from typing import Sequence

from .matchmaker import InputDirection, MatchReport, find_match, rank_all
from .ontology import Ontology
from .services import ServiceDescription

MODES = ("best", "rank")


def build_match_payload(
    ont: Ontology,
    crashed: ServiceDescription,
    repository: Sequence[ServiceDescription],
    mode: str = "best",
    input_direction: InputDirection = InputDirection.AS_PAPER,
) -> dict:
    """Evaluate a match request against an already-filtered repository.

    An empty repository is not an error here: the payload reports
    ``bestsrv: null`` with result "fail" and a scanned count of zero.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")

    if not repository:
        payload: dict = {
            "bestsrv": None,
            "result": "fail",
            "outsim": None,
            "insim": None,
            "scanned": 0,
        }
        if mode == "rank":
            payload["ranking"] = []
        return payload

    if mode == "best":
        best = find_match(ont, crashed, repository, input_direction)
        return {
            "bestsrv": best.service,
            "result": best.report.result.label,
            "outsim": best.report.outsim.label,
            "insim": best.report.insim.label,
            "scanned": best.scanned,
        }

    ranking = rank_all(ont, crashed, repository, input_direction)
    top_name, top_report = ranking[0]
    return {
        "bestsrv": top_name,
        "result": top_report.result.label,
        "outsim": top_report.outsim.label,
        "insim": top_report.insim.label,
        "scanned": len(repository),
        "ranking": [_ranking_entry(name, report) for name, report in ranking],
    }


def _ranking_entry(name: str, report: MatchReport) -> dict:
    return {
        "name": name,
        "result": report.result.label,
        "outsim": report.outsim.label,
        "insim": report.insim.label,
    }


def payload_bytes(payload: dict) -> bytes:
    """The one true serialization of a match payload."""
    return (json.dumps(payload) + "\n").encode("utf-8")
