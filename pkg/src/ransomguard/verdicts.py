"""Classification outcomes shared by the static and behavioral phases."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional


class VerdictKind(enum.Enum):
    BENIGN = "benign"
    KNOWN_MALWARE = "known_malware"
    RANSOM_NOTE = "ransom_note"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class Verdict:
    """Outcome of classifying a process or file.

    ``digest`` is set for known-malware hits, ``log_margin`` for note
    classifications (log-posterior of the winning class minus the loser),
    ``reason`` for indeterminate outcomes.
    """

    kind: VerdictKind
    digest: Optional[str] = None
    log_margin: Optional[float] = None
    reason: Optional[str] = None

    @staticmethod
    def benign(log_margin: Optional[float] = None) -> "Verdict":
        return Verdict(VerdictKind.BENIGN, log_margin=log_margin)

    @staticmethod
    def known_malware(digest: str) -> "Verdict":
        return Verdict(VerdictKind.KNOWN_MALWARE, digest=digest)

    @staticmethod
    def ransom_note(log_margin: float) -> "Verdict":
        return Verdict(VerdictKind.RANSOM_NOTE, log_margin=log_margin)

    @staticmethod
    def indeterminate(reason: str) -> "Verdict":
        return Verdict(VerdictKind.INDETERMINATE, reason=reason)

    @property
    def is_positive(self) -> bool:
        """True when the verdict warrants a response."""
        return self.kind in (VerdictKind.KNOWN_MALWARE, VerdictKind.RANSOM_NOTE)

    def describe(self) -> str:
        if self.kind is VerdictKind.KNOWN_MALWARE:
            return f"known-malware sha256={self.digest}"
        if self.kind is VerdictKind.RANSOM_NOTE:
            return f"ransom-note margin={self.log_margin:.3f}"
        if self.kind is VerdictKind.INDETERMINATE:
            return f"indeterminate ({self.reason})"
        return "benign"
