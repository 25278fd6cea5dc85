from __future__ import absolute_import, annotations

import json
import logging
import os
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from common.errors import CheckpointError, DomainError
from common.utils import Utils
from interval.enclosure import Enclosure


logger = logging.getLogger("singular.rangecert.certificate")

SCHEMA_VERSION = 1
PARTIAL_NOTE_PREFIX = "partial:"


class CertificateCheck:
    """
    A named sub-inequality of a certificate, `value relation bound`, decided on the enclosure.

    Attributes:
        - label: what the inequality states
        - value: the enclosure of the left side
        - relation: one of <, <=, >, >=
        - bound: the right side
    """

    RELATIONS = ("<", "<=", ">", ">=")

    def __init__(self, label: str, value: Enclosure, relation: str, bound: Fraction) -> None:
        if relation not in self.RELATIONS:
            raise DomainError(f"Unsupported relation [{relation}]")
        self.label = label
        self.value = value
        self.relation = relation
        self.bound = Fraction(bound)

    @property
    def holds(self) -> bool:
        if self.relation == "<":
            return self.value.hi < self.bound
        if self.relation == "<=":
            return self.value.hi <= self.bound
        if self.relation == ">":
            return self.value.lo > self.bound
        return self.value.lo >= self.bound

    def to_repr(self) -> dict:
        return {
            "label": self.label,
            "value": self.value.to_repr(),
            "relation": self.relation,
            "bound": Utils.rational_to_repr(self.bound),
            "holds": self.holds,
        }

    @staticmethod
    def from_repr(raw: dict) -> CertificateCheck:
        return CertificateCheck(
            raw["label"],
            Enclosure.from_repr(raw["value"]),
            raw["relation"],
            Utils.parse_rational(raw["bound"])
        )


class Certificate:
    """
    The machine readable record of one verified step.

    The certificate is verified when the total stays strictly below the threshold and every check holds.

    Attributes:
        - stage: the identifier of the step (high, mid-upper, sdverify, ...)
        - inputs: the named rational parameters the step was evaluated on
        - terms: the labelled enclosures summed or compared by the step
        - total: the enclosure compared against the threshold
        - threshold: the rational the total has to stay below
        - notes: free text, e.g. the trust boundary of a step or the partial marker
        - checks: the sub-inequalities of the step
        - runtime_ms: wall clock time, excluded from the determinism hash
    """

    def __init__(self,
                 stage: str,
                 inputs: Dict[str, Fraction],
                 terms: List[Tuple[str, Enclosure]],
                 total: Enclosure,
                 threshold: Fraction,
                 notes: Optional[List[str]] = None,
                 checks: Optional[List[CertificateCheck]] = None,
                 runtime_ms: int = 0
                 ) -> None:
        self.stage = stage
        self.inputs = inputs
        self.terms = terms
        self.total = total
        self.threshold = Fraction(threshold)
        self.notes = notes if notes else []
        self.checks = checks if checks else []
        self.runtime_ms = runtime_ms

    @property
    def verified(self) -> bool:
        return self.total.hi < self.threshold and all(check.holds for check in self.checks)

    @property
    def partial(self) -> bool:
        return any(note.startswith(PARTIAL_NOTE_PREFIX) for note in self.notes)

    def failed_checks(self) -> List[str]:
        return [check.label for check in self.checks if not check.holds]

    def mark_partial(self, reason: str) -> None:
        self.notes.append(f"{PARTIAL_NOTE_PREFIX} {reason}")

    def _body(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "stage": self.stage,
            "inputs": {name: Utils.rational_to_repr(Fraction(value)) for name, value in self.inputs.items()},
            "terms": [{"label": label, **value.to_repr()} for label, value in self.terms],
            "total": self.total.to_repr(),
            "threshold": Utils.rational_to_repr(self.threshold),
            "verified": self.verified,
            "notes": list(self.notes),
            "checks": [check.to_repr() for check in self.checks],
        }

    @property
    def determinism_hash(self) -> str:
        return Utils.sha256_of(self._body())

    def to_repr(self) -> dict:
        body = self._body()
        body["runtime_ms"] = self.runtime_ms
        body["determinism_hash"] = Utils.sha256_of(self._body())
        return body

    @staticmethod
    def from_repr(raw: dict) -> Certificate:
        return Certificate(
            raw["stage"],
            {name: Utils.parse_rational(value) for name, value in raw["inputs"].items()},
            [(term["label"], Enclosure.from_repr(term)) for term in raw["terms"]],
            Enclosure.from_repr(raw["total"]),
            Utils.parse_rational(raw["threshold"]),
            raw.get("notes", []),
            [CertificateCheck.from_repr(check) for check in raw.get("checks", [])],
            raw.get("runtime_ms", 0)
        )

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, Certificate):
            return False
        return self._body() == o._body()

    def __repr__(self) -> str:
        return f"Certificate({self.stage}, verified={self.verified})"

    def file_name(self) -> str:
        return f"{self.stage}.cert.json"

    def write(self, output_dir: str) -> str:
        os.makedirs(output_dir, exist_ok=True)
        file_path = os.path.join(output_dir, self.file_name())
        with open(file_path, "w") as f:
            json.dump(self.to_repr(), f, sort_keys=True, indent=2)
            f.write("\n")
        logger.info(f"Certificate [{self.stage}] written to [{file_path}], verified [{self.verified}]")
        return file_path

    @staticmethod
    def read(file_path: str) -> Certificate:
        try:
            with open(file_path) as f:
                raw = json.load(f)
            certificate = Certificate.from_repr(raw)
        except (OSError, ValueError, KeyError, TypeError) as e:
            raise CheckpointError(file_path, str(e)) from e
        if raw.get("determinism_hash") != certificate.determinism_hash:
            raise CheckpointError(file_path, "determinism hash does not match the content")
        return certificate
