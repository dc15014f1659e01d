"""Verdict records and their canonical JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .errors import DataError

PROPERTIES = ("big", "homologically-big", "nef", "universally-psef", "strongly-rigid", "perturbed-big")
VERDICTS = ("yes", "no", "unknown")

# named modelling assumptions, attached verbatim to the certificates that rely on them
NEF_POLICY_TABLE = ("nefness policy: nonnegative combinations of g*sigma_lambda * (phi*pi_k*h)^j on W and "
                    "h*sigma_lambda * (g*h)^j on E are treated as nef")
NEF_POLICY_TORIC = "products of extremal nef classes on a toric variety pair nonnegatively"
PAIRING_VERIFIED = ("pairing-verified: equality checked against every test monomial H1^a H2^b E^c, "
                    "not as classes in N_n(W)")


def render_rational(x: Fraction) -> str:
    """Canonical rendering: 'p' for integers, 'p/q' otherwise."""
    x = Fraction(x)
    return str(x)


def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DataError(f"not a rational: {s!r}") from exc


@dataclass(frozen=True)
class Certificate:
    subject: str
    property: str
    verdict: str
    rule: str
    numbers: tuple[tuple[str, Fraction], ...] = ()
    assumptions: tuple[str, ...] = ()
    witnesses: tuple[str, ...] = ()

    def __post_init__(self):
        if self.property not in PROPERTIES:
            raise DataError(f"unknown property {self.property!r}")
        if self.verdict not in VERDICTS:
            raise DataError(f"unknown verdict {self.verdict!r}")
        if self.verdict in ("yes", "no") and not (self.numbers or self.witnesses):
            raise DataError(f"{self.rule}: a {self.verdict} verdict needs a number or a witness")
        if self.verdict == "unknown" and not self.witnesses:
            raise DataError(f"{self.rule}: an unknown verdict must carry its reason")

    def number(self, name: str) -> Fraction:
        for k, v in self.numbers:
            if k == name:
                return v
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "property": self.property,
            "verdict": self.verdict,
            "rule": self.rule,
            "numbers": {k: render_rational(v) for k, v in self.numbers},
            "assumptions": list(self.assumptions),
            "witnesses": list(self.witnesses),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Certificate":
        try:
            return make_certificate(
                data["subject"], data["property"], data["verdict"], data["rule"],
                {k: parse_rational(v) for k, v in data.get("numbers", {}).items()},
                data.get("assumptions", []), data.get("witnesses", []),
            )
        except KeyError as exc:
            raise DataError(f"certificate is missing field {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))

    def summary(self) -> str:
        nums = ", ".join(f"{k}={render_rational(v)}" for k, v in self.numbers)
        return f"{self.subject}: {self.property} = {self.verdict} [{self.rule}]" + (f" ({nums})" if nums else "")


def make_certificate(subject: str, prop: str, verdict: str, rule: str,
                     numbers: Mapping[str, Any] | None = None,
                     assumptions: Iterable[str] = (), witnesses: Iterable[str] = ()) -> Certificate:
    nums = tuple(sorted((str(k), Fraction(v)) for k, v in (numbers or {}).items()))
    return Certificate(subject, prop, verdict, rule, nums, tuple(assumptions), tuple(witnesses))


def sort_certificates(certs: Iterable[Certificate]) -> list[Certificate]:
    return sorted(certs, key=lambda c: (c.subject, c.rule, c.property, c.verdict, c.to_json()))


def certificates_to_json(certs: Iterable[Certificate]) -> str:
    return json.dumps([c.to_dict() for c in sort_certificates(certs)], sort_keys=True, indent=2)
