import random

import pytest

from hearinglens.gazetteer import (
    OrgRegistry,
    is_blocklisted,
    load_registry,
    normalize_org_name,
    registry_scan,
)
from hearinglens.textutil import norm_tokens_with_map, tokenize


@pytest.fixture
def registry():
    return OrgRegistry(
        [
            "ACLU of California",
            "Sierra Club California",
            "Service Employees International Union",
            "Service Employees",
            "California Chamber of Commerce",
        ],
        city_county_blocklist=["Sacramento", "Oro Vista"],
    )


def test_normalize_examples():
    assert normalize_org_name("Common Sense Media,") == "common sense media"
    assert normalize_org_name("") == ""
    assert normalize_org_name("A.C.L.U. of California") == "aclu of california"


def test_normalize_idempotent_randomized():
    rng = random.Random(11)
    pieces = ["ACLU", "of", "Cal.", ",", "  ", "‘Club’", "&", "CO-OP"]
    for _ in range(300):
        text = " ".join(rng.choices(pieces, k=rng.randint(0, 8)))
        once = normalize_org_name(text)
        assert normalize_org_name(once) == once


def test_load_registry_rules(tmp_path):
    orgs = tmp_path / "orgs.txt"
    orgs.write_text("# registry\nACLU of California\nAB\nSEIU\nseiu\nSierra Club California\n")
    places = tmp_path / "places.txt"
    places.write_text("Sacramento\n# comment\n")
    registry = load_registry(orgs, places)
    assert registry.entries == ("ACLU of California", "SEIU", "Sierra Club California")
    assert registry.rejected == (("AB", "normalized form 'ab' shorter than 3 characters"),)
    assert registry.city_county_blocklist == frozenset({"sacramento"})
    assert "board member" in registry.phrase_blocklist


def test_singleton_registry():
    registry = OrgRegistry(["ACLU of California"])
    assert len(registry) == 1
    assert registry.canonical("aclu of california") == "ACLU of California"


def test_normalization_collapse():
    registry = OrgRegistry(["SEIU", "seiu"])
    assert registry.entries == ("SEIU",)


def test_registry_scan_examples(registry):
    got = registry_scan("with the Sierra Club California today", registry)
    assert got == [("Sierra Club California", (2, 5))]
    assert registry_scan("hello world", registry) == []
    # the longer entry wins over its substring entry
    got = registry_scan("the Service Employees International Union appeared", registry)
    assert got == [("Service Employees International Union", (1, 5))]


def test_registry_scan_brute_force_oracle(registry):
    def oracle(text):
        tokens = tokenize(text)
        norm, back = norm_tokens_with_map(tokens)
        entries = [(e, normalize_org_name(e).split()) for e in registry.entries]
        out = []
        i = 0
        while i < len(norm):
            best = None
            for name, toks in entries:
                k = len(toks)
                if norm[i : i + k] == toks and (best is None or k > len(best[1])):
                    best = (name, toks)
            if best is None:
                i += 1
            else:
                out.append((best[0], (back[i], back[i + len(best[1]) - 1] + 1)))
                i += len(best[1])
        return out

    rng = random.Random(23)
    words = ["the", "service", "employees", "international", "union", "sierra", "club",
             "california", "aclu", "of", "chamber", "commerce", ",", "and", "bill"]
    for _ in range(300):
        text = " ".join(rng.choices(words, k=rng.randint(0, 25)))
        assert registry_scan(text, registry) == oracle(text)


def test_registry_scan_span_text_matches_entry(registry):
    text = "I am here with the California Chamber of Commerce, in support."
    for name, (s, e) in registry_scan(text, registry):
        span_text = " ".join(tokenize(text)[s:e])
        assert normalize_org_name(span_text) == normalize_org_name(name)


def test_is_blocklisted(registry):
    assert is_blocklisted("Sacramento", registry)
    assert is_blocklisted("Board Member", registry)
    assert not is_blocklisted("ACLU of California", registry)
    assert is_blocklisted("AB", registry)  # length floor
    assert is_blocklisted("Oro Vista", registry)
