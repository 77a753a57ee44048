"""Shift-class classification and the implication closure of code facts.

The inference engine forward-chains a fixed rule set over three-valued
facts; every application is recorded with a citation tag, and any clash
between an inferred fact and an exactly decided one is a hard error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .presentation import ShiftSpace, EDGE, component_decomposition
from .language import (
    is_irreducible,
    is_nonwandering,
    is_sft,
    language_components,
)
from .entropy import entropy
from .codes import BlockCode, is_onto, to_one_block, validate_code
from .pairs import (
    is_bi_closing,
    is_left_closing,
    is_left_resolving,
    is_right_closing,
    is_right_resolving,
)
from .fibers import degree, is_constant_to_one, is_finite_to_one
from .openness import is_open, non_open_certificate


class ContradictionError(AssertionError):
    """An inferred fact clashes with an established one."""


def is_AFT(y: ShiftSpace) -> bool:
    """An irreducible sofic space is almost of finite type iff its
    canonical cover is also left closing."""
    from .constructions import canonical_cover

    if not is_irreducible(y):
        raise ValueError("not irreducible")
    cover = canonical_cover(y)
    return is_left_closing(cover.pi).value


def domain_class(x: ShiftSpace) -> str:
    """SFT(step k) / AFT / strictly sofic classification of a space.

    Reducible spaces are classified componentwise after the nonwandering
    decomposition when possible.
    """
    v = is_sft(x)
    if v.is_sft:
        return f"SFT({v.step})"
    if is_irreducible(x):
        return "AFT" if is_AFT(x) else "strictly-sofic-non-AFT"
    if is_nonwandering(x):
        comps = language_components(x)
        if all(is_AFT(c) for c in comps):
            return "strictly-almost-Markov"
        return "sofic-non-almost-Markov"
    return "sofic-wandering"


TRUE, FALSE, UNKNOWN = True, False, None


@dataclass
class Facts:
    """Write-once three-valued facts with provenance."""

    values: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    fired: list = field(default_factory=list)

    def get(self, name):
        return self.values.get(name, UNKNOWN)

    def set(self, name, value, why: str):
        old = self.values.get(name, UNKNOWN)
        if old is UNKNOWN:
            self.values[name] = value
            self.provenance[name] = why
            self.fired.append((name, value, why))
            return True
        if old != value:
            raise ContradictionError(
                f"{name}: {old} (via {self.provenance[name]}) vs {value} (via {why})"
            )
        return False


def infer(c: BlockCode, facts: Facts, context: dict) -> Facts:
    """Close the fact set under the implication rules, recording each
    application with its citation."""
    cod_irr = context.get("cod_irreducible", False)
    dom_sft_kind = c.domain.kind == EDGE
    dom_irr = context.get("dom_irreducible", False)
    equal_entropy = context.get("equal_entropy", UNKNOWN)
    if context.get("cod_sft") is not None and facts.get("codomain_sft") is UNKNOWN:
        facts.set("codomain_sft", context["cod_sft"], "sft decision")
    if dom_sft_kind and facts.get("domain_sft") is UNKNOWN:
        facts.set("domain_sft", TRUE, "edge shift")

    changed = True
    while changed:
        changed = False
        rc, lc = facts.get("right_closing"), facts.get("left_closing")
        closing = TRUE if (rc is TRUE or lc is TRUE) else (
            FALSE if (rc is FALSE and lc is FALSE) else UNKNOWN
        )
        bic = facts.get("bi_closing")
        cto = facts.get("constant_to_one")
        opn = facts.get("open")
        fto = facts.get("finite_to_one")
        onto = facts.get("onto")
        csft = facts.get("codomain_sft")

        def put(name, value, why):
            nonlocal changed
            if facts.set(name, value, why):
                changed = True

        if closing is TRUE:
            put("finite_to_one", TRUE, "closing codes are finite-to-one")
        if cto is TRUE:
            put("onto", TRUE, "constant-to-one codes are factor codes")
            put("finite_to_one", TRUE, "constant-to-one implies finite-to-one")
        if opn is TRUE and cod_irr:
            put("onto", TRUE, "Lemma 2.1")
        if cod_irr:
            if opn is TRUE and cto is TRUE:
                put("bi_closing", TRUE, "Prop 2.10")
            if opn is TRUE and closing is TRUE:
                put("constant_to_one", TRUE, "Thm 1.1")
            if cto is TRUE and closing is TRUE:
                put("open", TRUE, "Thm 1.1")
            if opn is TRUE and bic is TRUE:
                put("constant_to_one", TRUE, "Cor 2.9")
            if cto is TRUE and bic is TRUE:
                put("open", TRUE, "Thm 4.3")
            # contrapositives of the two-imply-third cluster
            if cto is TRUE and bic is FALSE:
                put("open", FALSE, "Thm 4.3 (contrapositive)")
            if closing is TRUE and cto is FALSE:
                put("open", FALSE, "Thm 1.1 (contrapositive)")
            if opn is TRUE and cto is FALSE:
                put("right_closing", FALSE, "Thm 1.1 (contrapositive)")
                put("left_closing", FALSE, "Thm 1.1 (contrapositive)")
            if opn is TRUE and closing is TRUE and cto is TRUE:
                put("domain_nonwandering", TRUE, "Thm 1.1")
        if dom_sft_kind and cod_irr and fto is TRUE:
            if opn is TRUE:
                put("constant_to_one", TRUE, "Thm 4.2")
            if cto is TRUE:
                put("open", TRUE, "Thm 4.2")
            if opn is FALSE:
                put("constant_to_one", FALSE, "Thm 4.2 (contrapositive)")
            if cto is FALSE:
                put("open", FALSE, "Thm 4.2 (contrapositive)")
            if opn is TRUE or cto is TRUE:
                put("bi_closing", TRUE, "Thm 4.2")
        if (
            dom_sft_kind
            and dom_irr
            and cod_irr
            and csft is TRUE
            and onto is TRUE
            and equal_entropy is TRUE
        ):
            three = ("open", "constant_to_one", "bi_closing")
            known = [facts.get(n) for n in three if facts.get(n) is not UNKNOWN]
            if known:
                for name in three:
                    put(name, known[0], "Thm 4.1")
        if dom_sft_kind and onto is TRUE and opn is TRUE:
            put("codomain_sft", TRUE, "Prop 2.3")
        if dom_sft_kind and onto is TRUE and csft is FALSE:
            put("open", FALSE, "Prop 2.3 (contrapositive)")
        if dom_sft_kind and dom_irr and cto is TRUE:
            put("codomain_sft", TRUE, "Lemma 2.2")
        if dom_sft_kind and cod_irr and csft is TRUE and cto is TRUE:
            put("domain_nonwandering", TRUE, "Prop 3.1")
            put("components_maximal", TRUE, "Prop 3.1")
        if dom_sft_kind and cod_irr and fto is TRUE and opn is TRUE:
            put("domain_nonwandering", TRUE, "Prop 3.3")
            put("components_maximal", TRUE, "Prop 3.3")
        if rc is TRUE and cod_irr and csft is TRUE and (opn is TRUE or cto is TRUE):
            put("domain_nonwandering", TRUE, "Prop 3.4/3.5")
            put("domain_sft", TRUE, "Prop 3.4/3.5")
        if rc is TRUE and cod_irr and (opn is TRUE or cto is TRUE):
            put("domain_nonwandering", TRUE, "Cor 4.5")
            put("components_maximal", TRUE, "Cor 4.5")
    return facts


@dataclass(frozen=True)
class PropertyReport:
    code_name: str
    verdicts: dict
    provenance: dict
    citations: tuple
    witnesses: dict

    def as_dict(self) -> dict:
        def enc(v):
            if isinstance(v, float) and v != v:  # NaN guard
                return None
            if v is None or isinstance(v, (bool, int, float, str)):
                return v
            return repr(v)

        return {
            "code": self.code_name,
            "verdicts": {k: enc(v) for k, v in sorted(self.verdicts.items())},
            "provenance": {k: str(v) for k, v in sorted(self.provenance.items())},
            "citations": list(self.citations),
            "witnesses": {k: repr(v) for k, v in sorted(self.witnesses.items())},
        }


def analyze(c: BlockCode, name: str = "code", scan_bound=None) -> PropertyReport:
    """Full property analysis of a code: decide everything decidable,
    close under the implications, and cross-check for consistency."""
    c1, _ = to_one_block(c)
    v = validate_code(c1)
    if not v.ok:
        raise ValueError(f"invalid code: image of {v.violation} is forbidden")
    onto = is_onto(c1)
    fto = is_finite_to_one(c1, scan_bound)
    rc = is_right_closing(c1)
    lc = is_left_closing(c1)
    bic = rc.value and lc.value
    cto = is_constant_to_one(c1, scan_bound)
    opn = is_open(c1)
    witnesses = {}
    facts = Facts()
    facts.set("onto", onto, "image comparison")
    facts.set("finite_to_one", fto.value, fto.route)
    facts.set("right_closing", rc.value, rc.route)
    facts.set("left_closing", lc.value, lc.route)
    facts.set("bi_closing", bic, "pair-graph")
    if cto.status != "inconclusive":
        facts.set("constant_to_one", cto.yes, cto.route)
    if opn.status != "unknown":
        facts.set("open", opn.open, opn.route)
    cod_irr = is_irreducible(c1.codomain)
    cod_sft = is_sft(c1.codomain)
    dom_sft = is_sft(c1.domain)
    context = {
        "cod_irreducible": cod_irr,
        "cod_sft": cod_sft.is_sft,
        "dom_irreducible": is_irreducible(c1.domain),
    }
    if not c1.domain.is_empty and not c1.codomain.is_empty:
        context["equal_entropy"] = entropy(c1.domain).isclose(entropy(c1.codomain))
    infer(c1, facts, context)

    verdicts = {
        "onto": onto,
        "finite_to_one": fto.value,
        "right_closing": rc.value,
        "left_closing": lc.value,
        "bi_closing": bic,
        "constant_to_one": cto.status,
        "constant_to_one_d": cto.d,
        "open": opn.status,
        "open_exact": opn.exact,
        "domain_class": domain_class(c1.domain),
        "codomain_class": domain_class(c1.codomain),
        "codomain_irreducible": cod_irr,
        "domain_nonwandering": is_nonwandering(c1.domain),
    }
    if fto.value and onto and cod_irr:
        facts_hint = {"bi_closing": bic, "open": opn.open and opn.status == "open"}
        deg = degree(c1, scan_bound, facts=facts_hint)
        verdicts["degree"] = deg.degree
        verdicts["degree_route"] = deg.route
    if rc.value:
        verdicts["right_closing_delay"] = rc.witness
    if lc.value:
        verdicts["left_closing_delay"] = lc.witness
    if not rc.value:
        witnesses["right_closing"] = rc.witness
    if not lc.value:
        witnesses["left_closing"] = lc.witness
    if opn.status == "not_open" and opn.route == "cylinder-certificate":
        witnesses["open"] = opn.witness
    if cto.witness is not None:
        witnesses["constant_to_one"] = cto.witness

    # inference must not contradict the decided facts; the engine raised
    # if it did, so surviving inferred values only fill unknowns
    if facts.get("open") is not UNKNOWN and opn.status == "unknown":
        verdicts["open"] = "open" if facts.get("open") else "not_open"
        verdicts["open_exact"] = True
    if facts.get("constant_to_one") is not UNKNOWN and cto.status == "inconclusive":
        verdicts["constant_to_one"] = "yes" if facts.get("constant_to_one") else "no"

    citations = tuple(sorted({why for _, _, why in facts.fired}))
    return PropertyReport(name, verdicts, dict(facts.provenance), citations, witnesses)


@dataclass(frozen=True)
class ExtensionReport:
    codomain_class: str
    domain_class: str
    nonwandering: bool
    components_maximal: bool
    citation: str


def extension_structure(c: BlockCode) -> ExtensionReport:
    """Structure carried back through a right closing open (or
    constant-to-one) code onto an irreducible sofic space.

    SFT pulls back to SFT, strictly almost Markov to strictly almost
    Markov, non-AFT to non-almost-Markov; the domain is nonwandering with
    all components maximal.  Each conclusion is re-verified by the
    independent classifiers.
    """
    c1, _ = to_one_block(c)
    if not is_right_closing(c1).value:
        raise ValueError("code is not right closing")
    if not is_irreducible(c1.codomain):
        raise ValueError("codomain not irreducible")
    opn = is_open(c1)
    cto = is_constant_to_one(c1)
    if not (opn.status == "open" or cto.yes):
        raise ValueError("code is neither open nor constant-to-one")
    cod_class = domain_class(c1.codomain)
    dom_class = domain_class(c1.domain)
    if cod_class.startswith("SFT") and not dom_class.startswith("SFT"):
        raise ContradictionError("Cor 4.5(1): domain should be of finite type")
    if cod_class == "AFT" and not is_sft(c1.codomain).is_sft:
        if dom_class.startswith("SFT") or "non" in dom_class:
            raise ContradictionError("Cor 4.5(2): domain should be strictly almost Markov")
    if cod_class == "strictly-sofic-non-AFT":
        if dom_class.startswith("SFT") or dom_class in ("AFT", "strictly-almost-Markov"):
            raise ContradictionError("Cor 4.5(3): domain should not be almost Markov")
    nonw = is_nonwandering(c1.domain)
    if not nonw:
        raise ContradictionError("Cor 4.5: domain should be nonwandering")
    h_dom = entropy(c1.domain)
    maximal = all(
        entropy(comp).isclose(h_dom) for comp in language_components(c1.domain)
    )
    if not maximal:
        raise ContradictionError("Cor 4.5: components should be maximal")
    return ExtensionReport(cod_class, dom_class, nonw, maximal, "Cor 4.5")
