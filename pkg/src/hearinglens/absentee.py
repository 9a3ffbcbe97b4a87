"""Attendance: who was present, absent, or not assessable per hearing.

Speaking anywhere in a hearing or answering the roll call is evidence of
presence; silence plus no verbal vote means absent. When more than 60% of
a roster looks absent the hearing was likely a short special meeting where
most members were never expected to speak, so absence is not assessed;
reporting a false absence is worse than missing a true one.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from typing import IO, Iterable, Optional, Sequence

from hearinglens.engagement import RollCall
from hearinglens.model import Hearing

STATUS_PRESENT = "present"
STATUS_ABSENT = "absent"
STATUS_NOT_ASSESSED = "not-assessed-special-meeting"
STATUSES = (STATUS_PRESENT, STATUS_ABSENT, STATUS_NOT_ASSESSED)

SPECIAL_MEETING_THRESHOLD = 0.6


@dataclass(frozen=True)
class AttendanceRecord:
    hearing_id: str
    legislator_id: str
    status: str

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown attendance status {self.status!r}")


def detect_absences(hearing: Hearing, roll_call: Optional[RollCall]) -> list[AttendanceRecord]:
    """One record per roster member: present iff they spoke or verbally voted."""
    votes = roll_call.votes if roll_call is not None else frozenset()
    spoke = {utt.speaker.id for utt in hearing.utterances}
    records = []
    for member in sorted(hearing.committee_roster):
        present = member in spoke or member in votes
        records.append(
            AttendanceRecord(hearing.id, member, STATUS_PRESENT if present else STATUS_ABSENT)
        )
    return records


def apply_special_meeting_rule(
    records: Sequence[AttendanceRecord],
    *,
    threshold: float = SPECIAL_MEETING_THRESHOLD,
) -> list[AttendanceRecord]:
    """Void absences when strictly more than ``threshold`` of the roster is absent.

    All records must belong to one hearing. Idempotent: voided records are
    no longer absent, so a second application changes nothing.
    """
    records = list(records)
    if not records:
        return records
    if len({r.hearing_id for r in records}) != 1:
        raise ValueError("records must all belong to one hearing")
    absent = sum(1 for r in records if r.status == STATUS_ABSENT)
    if absent / len(records) <= threshold:
        return records
    return [
        replace(r, status=STATUS_NOT_ASSESSED) if r.status == STATUS_ABSENT else r
        for r in records
    ]


def hearing_attendance(
    hearing: Hearing,
    roll_call: Optional[RollCall],
    *,
    threshold: float = SPECIAL_MEETING_THRESHOLD,
) -> list[AttendanceRecord]:
    """Detect absences and apply the special-meeting override in one step."""
    return apply_special_meeting_rule(detect_absences(hearing, roll_call), threshold=threshold)


def write_attendance_csv(records: Iterable[AttendanceRecord], sink: IO[str]) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["hearing_id", "legislator_id", "status"])
    for record in records:
        writer.writerow([record.hearing_id, record.legislator_id, record.status])
