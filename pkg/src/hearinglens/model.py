"""Hearing transcript data model and the line-delimited JSON file format.

A hearing file holds one JSON object per line (UTF-8), field names exactly
as in the dataclasses below; ``docs/hearing_format.md`` documents the
schema. Hearings are immutable after parsing and safe for concurrent
reads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from typing import IO, Iterable, Optional

ROLES = (
    "legislator",
    "chair",
    "committee-secretary",
    "public-commenter",
    "witness",
    "bill-presenter",
    "other",
)

# Chairs are committee members too: both roles count as legislators for
# engagement, back-and-forth detection and attendance.
LEGISLATOR_ROLES = frozenset({"legislator", "chair"})

PHASES = ("discussion", "public-comment", "roll-call", "other")


class HearingFormatError(ValueError):
    """Raised when a hearing file or record violates the format."""


@dataclass(frozen=True)
class Speaker:
    id: str
    full_name: str
    last_name: str
    role: str

    def __post_init__(self):
        if not self.id:
            raise HearingFormatError("speaker id must be non-empty")
        if self.role not in ROLES:
            raise HearingFormatError(f"speaker {self.id!r}: unknown role {self.role!r}")
        if self.role in LEGISLATOR_ROLES and not self.last_name:
            raise HearingFormatError(f"speaker {self.id!r}: legislators need a last_name")


@dataclass(frozen=True)
class Utterance:
    index: int
    speaker: Speaker
    text: str
    start_seconds: Optional[float] = None
    end_seconds: Optional[float] = None
    phase: Optional[str] = None

    def __post_init__(self):
        if self.phase is not None and self.phase not in PHASES:
            raise HearingFormatError(f"utterance {self.index}: unknown phase {self.phase!r}")
        for name in ("start_seconds", "end_seconds"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise HearingFormatError(f"utterance {self.index}: {name} must be non-negative")
        if (
            self.start_seconds is not None
            and self.end_seconds is not None
            and self.end_seconds < self.start_seconds
        ):
            raise HearingFormatError(f"utterance {self.index}: end_seconds precedes start_seconds")


@dataclass(frozen=True)
class Hearing:
    id: str
    committee_roster: frozenset[str]
    utterances: tuple[Utterance, ...]
    bill_id: Optional[str] = None
    is_floor_session: bool = False
    vote_recorded: bool = False

    def __post_init__(self):
        if not self.id:
            raise HearingFormatError("hearing id must be non-empty")
        for position, utt in enumerate(self.utterances):
            if utt.index != position:
                raise HearingFormatError(
                    f"hearing {self.id!r}: gapless ordering violated at utterance "
                    f"index {utt.index} (expected {position})"
                )


_SPEAKER_FIELDS = frozenset(f.name for f in fields(Speaker))
_UTTERANCE_FIELDS = frozenset(f.name for f in fields(Utterance))
_HEARING_FIELDS = frozenset(f.name for f in fields(Hearing))


def _reject_unknown(record: dict, allowed: frozenset, where: str) -> None:
    unknown = sorted(set(record) - allowed)
    if unknown:
        raise HearingFormatError(f"{where}: unknown fields {unknown}")


def _take(record: dict, name: str, kind, where: str, required: bool = True):
    if name not in record or record[name] is None:
        if required:
            raise HearingFormatError(f"{where}: missing field {name!r}")
        return None
    value = record[name]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or (kind is not bool and isinstance(value, bool)):
        raise HearingFormatError(f"{where}: field {name!r} has wrong type")
    return value


def _speaker_from_dict(record, where: str, seen: dict[str, Speaker]) -> Speaker:
    if not isinstance(record, dict):
        raise HearingFormatError(f"{where}: speaker must be an object")
    _reject_unknown(record, _SPEAKER_FIELDS, where)
    speaker = Speaker(
        id=_take(record, "id", str, where),
        full_name=_take(record, "full_name", str, where),
        last_name=_take(record, "last_name", str, where),
        role=_take(record, "role", str, where),
    )
    prior = seen.get(speaker.id)
    if prior is None:
        seen[speaker.id] = speaker
        return speaker
    if prior != speaker:
        raise HearingFormatError(f"{where}: speaker id {speaker.id!r} redefined with different fields")
    return prior


def parse_hearing_file(source: IO[str]) -> list[Hearing]:
    """Parse line-delimited JSON hearings, one hearing object per line.

    Validates every invariant and raises HearingFormatError naming the
    offending line and field; hearing order is preserved, blank lines are
    skipped. A speaker id must mean the same speaker everywhere in the
    corpus.
    """
    hearings: list[Hearing] = []
    seen_hearings: set[str] = set()
    speakers: dict[str, Speaker] = {}
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        where = f"line {lineno}"
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise HearingFormatError(f"{where}: invalid JSON ({exc})") from exc
        if not isinstance(record, dict):
            raise HearingFormatError(f"{where}: hearing record must be an object")
        _reject_unknown(record, _HEARING_FIELDS, where)
        hearing_id = _take(record, "id", str, where)
        where = f"line {lineno} (hearing {hearing_id!r})"
        if hearing_id in seen_hearings:
            raise HearingFormatError(f"{where}: duplicate hearing id")
        roster = _take(record, "committee_roster", list, where)
        if not all(isinstance(m, str) for m in roster):
            raise HearingFormatError(f"{where}: committee_roster entries must be strings")
        raw_utterances = _take(record, "utterances", list, where)
        utterances = []
        for k, utt_record in enumerate(raw_utterances):
            utt_where = f"{where}, utterance {k}"
            if not isinstance(utt_record, dict):
                raise HearingFormatError(f"{utt_where}: must be an object")
            _reject_unknown(utt_record, _UTTERANCE_FIELDS, utt_where)
            try:
                utterances.append(
                    Utterance(
                        index=_take(utt_record, "index", int, utt_where),
                        speaker=_speaker_from_dict(utt_record.get("speaker"), utt_where, speakers),
                        text=_take(utt_record, "text", str, utt_where),
                        start_seconds=_take(utt_record, "start_seconds", float, utt_where, required=False),
                        end_seconds=_take(utt_record, "end_seconds", float, utt_where, required=False),
                        phase=_take(utt_record, "phase", str, utt_where, required=False),
                    )
                )
            except HearingFormatError as exc:
                raise HearingFormatError(f"{utt_where}: {exc}") from exc
        try:
            hearing = Hearing(
                id=hearing_id,
                committee_roster=frozenset(roster),
                utterances=tuple(utterances),
                bill_id=_take(record, "bill_id", str, where, required=False),
                is_floor_session=bool(_take(record, "is_floor_session", bool, where, required=False) or False),
                vote_recorded=bool(_take(record, "vote_recorded", bool, where, required=False) or False),
            )
        except HearingFormatError as exc:
            raise HearingFormatError(f"{where}: {exc}") from exc
        seen_hearings.add(hearing_id)
        hearings.append(hearing)
    return hearings


def speaker_to_dict(speaker: Speaker) -> dict:
    return {
        "id": speaker.id,
        "full_name": speaker.full_name,
        "last_name": speaker.last_name,
        "role": speaker.role,
    }


def hearing_to_dict(hearing: Hearing) -> dict:
    """Canonical JSON-ready form: stable key order, roster sorted."""
    return {
        "id": hearing.id,
        "committee_roster": sorted(hearing.committee_roster),
        "bill_id": hearing.bill_id,
        "is_floor_session": hearing.is_floor_session,
        "vote_recorded": hearing.vote_recorded,
        "utterances": [
            {
                "index": utt.index,
                "speaker": speaker_to_dict(utt.speaker),
                "text": utt.text,
                "start_seconds": utt.start_seconds,
                "end_seconds": utt.end_seconds,
                "phase": utt.phase,
            }
            for utt in hearing.utterances
        ],
    }


def write_hearing_file(hearings: Iterable[Hearing], sink: IO[str]) -> None:
    """Serialize hearings in the canonical line-delimited JSON form."""
    for hearing in hearings:
        sink.write(json.dumps(hearing_to_dict(hearing), ensure_ascii=False) + "\n")


def build_speaker_directory(hearings: Iterable[Hearing]) -> dict[str, Speaker]:
    """Map speaker id -> Speaker over every utterance in the corpus.

    Roster members who never speak anywhere in the corpus have no entry,
    so their names cannot be spotted in roll calls.
    """
    directory: dict[str, Speaker] = {}
    for hearing in hearings:
        for utt in hearing.utterances:
            directory.setdefault(utt.speaker.id, utt.speaker)
    return directory
