"""Deterministic synthetic fixtures: registries, comments, hearings.

Everything here is driven by a seeded ``random.Random`` so the test suite
and the scan benchmark get reproducible corpora of arbitrary size. The
vocabulary is invented (no real geography or real organizations) and is
chosen so organization names never collide with city names, stance
phrases, or stop verbs.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from hearinglens.augment import TAG_ORGANIZATION, TAG_OTHER, TAG_PERSON, TaggedComment
from hearinglens.evaluation import LabeledComment
from hearinglens.model import Hearing, Speaker, Utterance

_ADJECTIVES = (
    "", "United", "Independent", "Greater", "Associated", "Allied", "Statewide", "Regional", "Pacific",
)
_REGIONS = (
    "Westvale", "Northfield", "Eastport", "Southgate", "Lakeshore", "Riverbend",
    "Highland", "Canyon", "Meadowbrook", "Stonebridge",
)
_CAUSES = (
    "Nurses", "Teachers", "Water", "Housing", "Justice", "Clean Energy", "Small Business",
    "Taxpayers", "Consumer", "Farm", "Transit", "Privacy", "Youth", "Seniors", "Labor",
    "Health", "Forestry", "Fisheries", "Technology", "Retail",
)
_FORMS = (
    "Association", "Coalition", "Alliance", "Federation", "Council", "League", "Union",
    "Network", "Institute", "Society", "Committee", "Fund",
)

_CITIES = (
    "Rivermont", "Lakewood Hills", "Port Aurelia", "Eastbrook", "Fairhaven", "Millbrae Point",
    "Cedar Flats", "Oro Vista", "Summerfield", "Dunmore", "Kingsbury", "Altavista",
)

_FIRST_NAMES = (
    "Jordan", "Alex", "Sam", "Taylor", "Morgan", "Casey", "Riley", "Jamie", "Avery",
    "Quinn", "Dana", "Reese", "Harper", "Rowan", "Skyler", "Devon",
)
_LAST_NAMES = (
    "Ellis", "Navarro", "Whitfield", "Okafor", "Lindqvist", "Moreau", "Tanaka", "Beckett",
    "Santos", "Hale", "Mercer", "Vance", "Iverson", "Calloway", "Drummond", "Pemberton",
    "Ashford", "Quintero", "Rutledge", "Solano",
)

# Invented-organization vocabulary disjoint from the registry vocabulary.
_NEIGHBORHOODS = ("Harborview", "Oakcrest", "Brookfield", "Summit Park", "Gladeside", "Ferndale")
_LOCAL_FORMS = ("Residents Assembly", "Merchants Forum", "Tenants Guild", "Homeowners Circle")


def synth_registry_names(n: int, seed: int = 0) -> list[str]:
    """``n`` distinct plausible organization names."""
    rng = random.Random(seed)
    names: list[str] = []
    seen: set[str] = set()
    while len(names) < n:
        adjective = rng.choice(_ADJECTIVES)
        region = rng.choice(_REGIONS)
        cause = rng.choice(_CAUSES)
        form = rng.choice(_FORMS)
        pattern = rng.randrange(3)
        if pattern == 0:
            name = f"{region} {cause} {form}"
        elif pattern == 1:
            name = f"{cause} {form} of {region}"
        else:
            name = f"{region} {form} for {cause}"
        if adjective:
            name = f"{adjective} {name}"
        if name not in seen:
            seen.add(name)
            names.append(name)
    return names


def synth_city_names() -> list[str]:
    return list(_CITIES)


def _invented_org(rng: random.Random) -> str:
    return f"{rng.choice(_NEIGHBORHOODS)} {rng.choice(_LOCAL_FORMS)}"


def _person(rng: random.Random, index: int, role: str) -> Speaker:
    first = rng.choice(_FIRST_NAMES)
    last = rng.choice(_LAST_NAMES)
    return Speaker(id=f"{role[:2]}{index}", full_name=f"{first} {last}", last_name=last, role=role)


def synth_affiliation_corpus(
    registry_names: Sequence[str],
    n: int,
    seed: int = 0,
) -> list[LabeledComment]:
    """Labeled comments with planted organizations and distractors.

    The mix covers cue-introduced registry organizations, comma lists,
    invented (non-registry) organizations, late-position mentions that are
    not affiliations, bare self-introductions, city-of-residence phrases,
    and entity-free filler.
    """
    rng = random.Random(seed)
    kinds = rng.choices(
        population=("cue_org", "with_org", "my_name", "two_orgs", "invented", "late_org",
                    "name_only", "city", "mixed_pair", "no_entity"),
        weights=(30, 15, 12, 10, 8, 8, 7, 5, 3, 2),
        k=n,
    )
    records = []
    for i, kind in enumerate(kinds):
        speaker = _person(rng, i, "public-commenter")
        org = rng.choice(registry_names)
        other = rng.choice(registry_names)
        stance_tail = rng.choice(
            ("in support of this bill.", "in strong support.", "in opposition.",
             "and we urge an aye vote.", "in respectful opposition to this measure.")
        )
        if kind == "cue_org":
            text = f"{speaker.full_name}, on behalf of {org}, {stance_tail}"
            truth = (org,)
        elif kind == "with_org":
            text = f"{speaker.full_name} with {org} {stance_tail}"
            truth = (org,)
        elif kind == "my_name":
            text = f"My name is {speaker.full_name}, representing {org}, {stance_tail}"
            truth = (org,)
        elif kind == "two_orgs":
            while other == org:
                other = rng.choice(registry_names)
            text = f"{speaker.full_name}, on behalf of {org}, {other}, {stance_tail}"
            truth = (org, other)
        elif kind == "invented":
            invented = _invented_org(rng)
            text = f"{speaker.full_name}, speaking for the {invented}, {stance_tail}"
            truth = (invented,)
        elif kind == "late_org":
            text = (
                f"{speaker.full_name}, on behalf of {org}, {stance_tail} "
                f"Before closing I also want to recognize the many volunteers and staff members "
                f"who have worked closely with {other} on this issue for many years."
            )
            truth = (org,)
        elif kind == "name_only":
            text = f"{speaker.full_name}. I urge an aye vote on this measure."
            truth = ()
        elif kind == "city":
            city = rng.choice(_CITIES)
            text = f"{speaker.full_name}, a resident from {city}, here in opposition."
            truth = ()
        elif kind == "mixed_pair":
            invented = _invented_org(rng)
            text = f"{speaker.full_name}, with {org} and the {invented} {stance_tail}"
            truth = (org, invented)
        else:
            text = "I have concerns about the fiscal impact and hope the committee considers amendments."
            truth = ()
        records.append(LabeledComment(text, truth, speaker))
    return records


def synth_stance_samples(n: int, seed: int = 0) -> list[tuple[str, str]]:
    """Labeled comments whose stance is stated with explicit keywords."""
    rng = random.Random(seed)
    support_bits = (
        "we support this bill", "we are supporting this measure", "we urge an aye vote",
        "please record a yes vote", "we are proud to cosponsor this effort",
    )
    oppose_bits = (
        "we oppose this bill", "we are opposed to this measure", "we stand in opposition",
        "we urge a no vote", "please record a nay vote", "we will be opposing the amendments",
    )
    filler_bits = (
        "thank you for the opportunity to speak", "the fiscal outlook remains uncertain",
        "our members met with staff last week", "this committee has heard extensive testimony",
        "the amendments were published on Tuesday",
    )
    samples = []
    for _ in range(n):
        label = rng.choices(("Support", "Oppose", "Neutral"), weights=(4, 4, 3), k=1)[0]
        parts = [rng.choice(filler_bits)]
        if label == "Support":
            parts += [rng.choice(support_bits) for _ in range(rng.randint(1, 3))]
        elif label == "Oppose":
            parts += [rng.choice(oppose_bits) for _ in range(rng.randint(1, 3))]
        if rng.random() < 0.5:
            parts.append(rng.choice(filler_bits))
        rng.shuffle(parts)
        samples.append((". ".join(parts).capitalize() + ".", label))
    return samples


def synth_tagged_comments(n: int, registry_names: Sequence[str], seed: int = 0) -> list[TaggedComment]:
    """Tagged comments with 0, 1 or 2 organization slots for augmentation."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        speaker = _person(rng, i, "public-commenter")
        name_tokens = speaker.full_name.split()
        slots = rng.choices((0, 1, 2), weights=(2, 6, 2), k=1)[0]
        tokens = list(name_tokens) + ["here", "with"]
        tags = [TAG_PERSON] * len(name_tokens) + [TAG_OTHER, TAG_OTHER]
        org_slots = []
        for k in range(slots):
            org_tokens = rng.choice(registry_names).split()
            org_slots.append((len(tokens), len(tokens) + len(org_tokens)))
            tokens.extend(org_tokens)
            tags.extend([TAG_ORGANIZATION] * len(org_tokens))
            if k + 1 < slots:
                tokens.append("and")
                tags.append(TAG_OTHER)
        tokens.extend(["in", "support", "."])
        tags.extend([TAG_OTHER] * 3)
        if slots == 0:
            tokens = list(name_tokens) + ["urging", "an", "aye", "vote", "."]
            tags = [TAG_PERSON] * len(name_tokens) + [TAG_OTHER] * 5
        out.append(TaggedComment(tuple(tokens), tuple(tags), tuple(org_slots)))
    return out


def synth_hearing_corpus(
    n_hearings: int,
    registry_names: Sequence[str],
    seed: int = 0,
    *,
    tag_phases: Optional[bool] = None,
) -> list[Hearing]:
    """A committee-session corpus with rosters, discussion, back-and-forth
    exchanges, public comments, roll calls, floor sessions and silent
    members. ``tag_phases=None`` mixes tagged and untagged hearings."""
    rng = random.Random(seed)
    first = list(_FIRST_NAMES)
    members = [
        Speaker(
            id=f"leg{k}",
            full_name=f"{first[k % len(first)]} {_LAST_NAMES[k]}",
            last_name=_LAST_NAMES[k],
            role="chair" if k < 2 else "legislator",
        )
        for k in range(14)
    ]
    secretary = Speaker(id="sec0", full_name="Robin Castellanos", last_name="Castellanos", role="committee-secretary")
    witnesses = [
        Speaker(id=f"wit{k}", full_name=f"{_FIRST_NAMES[(k + 3) % len(_FIRST_NAMES)]} Witness{k}",
                last_name=f"Witness{k}", role="witness")
        for k in range(6)
    ]
    filler = (
        "the committee has reviewed the staff analysis and the amendments",
        "our office received letters from constituents across the district",
        "the fiscal committee flagged ongoing costs in the out years",
        "this program was established more than a decade ago",
        "the department testified at the previous informational hearing",
    )

    def sentence(words: int) -> str:
        bits = []
        while sum(len(b.split()) for b in bits) < words:
            bits.append(rng.choice(filler))
        return (". ".join(bits) + ".").capitalize()

    hearings = []
    comment_pool = synth_affiliation_corpus(registry_names, max(n_hearings * 4, 16), seed=seed + 17)
    pool_at = 0
    for h in range(n_hearings):
        tagged = rng.random() < 0.5 if tag_phases is None else tag_phases
        chair = members[h % 2]
        roster_members = [chair] + rng.sample(members[2:], rng.randint(5, 8))
        roster = frozenset(m.id for m in roster_members)
        floor = rng.random() < 0.1
        procedural = not floor and rng.random() < 0.1
        utts: list[Utterance] = []

        def add(speaker, text, phase=None, timing=None):
            start, end = timing if timing else (None, None)
            utts.append(
                Utterance(
                    index=len(utts), speaker=speaker, text=text,
                    start_seconds=start, end_seconds=end,
                    phase=phase if tagged else None,
                )
            )

        add(chair, f"We will come to order. Today we take up measure HB-{100 + h}. {sentence(12)}", "discussion")
        if procedural:
            add(chair, "Without objection this item moves to the consent calendar. We are adjourned.", "discussion")
            hearings.append(
                Hearing(id=f"hearing-{h:03d}", committee_roster=roster, utterances=tuple(utts),
                        bill_id=f"HB-{100 + h}", is_floor_session=False, vote_recorded=False)
            )
            continue
        presenter = witnesses[h % len(witnesses)]
        add(presenter, sentence(25), "discussion")
        speakers_today = rng.sample(roster_members, max(3, len(roster_members) - 2))
        for member in speakers_today:
            style = rng.randrange(3)
            if style == 0:
                add(member, f"{sentence(rng.randint(8, 40))} Could you clarify the implementation timeline?",
                    "discussion")
                add(presenter, sentence(rng.randint(8, 25)), "discussion")
                add(member, "Thank you. That answers my question.", "discussion")
            elif style == 1:
                minutes = rng.randint(1, 3)
                add(member, sentence(rng.randint(20, 70)), "discussion",
                    timing=(float(600 + h), float(600 + h + 60 * minutes)))
            else:
                add(member, sentence(rng.randint(8, 30)), "discussion")
        n_comments = rng.randint(1, 4)
        for _ in range(n_comments):
            record = comment_pool[pool_at % len(comment_pool)]
            pool_at += 1
            add(record.speaker, record.text, "public-comment")
        voters = [m for m in roster_members if rng.random() < 0.8]
        for member in voters:
            add(secretary, f"{member.last_name}?", "roll-call")
            add(secretary, f"{member.last_name}, aye.", "roll-call")
        for member in roster_members:
            if member not in voters and rng.random() < 0.5:
                add(secretary, f"{member.last_name}?", "roll-call")
        hearings.append(
            Hearing(id=f"hearing-{h:03d}", committee_roster=roster, utterances=tuple(utts),
                    bill_id=f"HB-{100 + h}", is_floor_session=floor, vote_recorded=bool(voters))
        )
    return hearings
