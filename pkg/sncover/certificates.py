"""
Positivity certificates for extended Kronecker coefficients.

A Relation c(l_1, ..., l_k) claims that l_1 x ... x l_k contains the trivial
representation. A Certificate is a proof tree for one: leaves are axioms, inner
nodes apply the semigroup property (componentwise horizontal sums, or vertical
sums on an even number of positions), conjugate two entries, reorder entries,
or splice two relations along a shared entry.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Literal, Optional, Sequence

from pydantic import BaseModel, Field, ValidationError

from .config import get_config
from .diagram import Partition, as_partition, conjugate, hsum, row, vsum
from .errors import (
    CertificateParseError,
    InvalidArgumentError,
    PreconditionError,
    VerificationError,
)
from .kronecker import extended_kronecker
from .telemetry import get_tracer

logger = logging.getLogger(__name__)
tracer = get_tracer()

SCHEMA = "sncover-certificate"
SCHEMA_VERSION = 1


class Rule(str, Enum):
    AXIOM_ORACLE = "axiom-oracle"
    AXIOM_SYMMETRIC_CUBE = "axiom-symmetric-cube"
    AXIOM_TRIVIAL_PAIR = "axiom-trivial-pair"
    COMBINE_HSUM = "combine-hsum"
    COMBINE_VSUM = "combine-vsum"
    CONJUGATE_PAIR = "conjugate-pair"
    PERMUTE = "permute"
    SPLICE = "splice"


LEAF_RULES = {Rule.AXIOM_ORACLE, Rule.AXIOM_SYMMETRIC_CUBE, Rule.AXIOM_TRIVIAL_PAIR}


@dataclass(frozen=True)
class Relation:
    entries: tuple[Partition, ...]

    def __post_init__(self):
        entries = tuple(as_partition(p) for p in self.entries)
        if len(entries) < 3:
            raise InvalidArgumentError(f"a relation needs at least 3 entries, got {len(entries)}")
        sizes = {p.size for p in entries}
        if len(sizes) != 1:
            raise InvalidArgumentError(f"relation entries have different sizes {sorted(sizes)}")
        object.__setattr__(self, "entries", entries)

    @property
    def size(self) -> int:
        return self.entries[0].size

    @property
    def arity(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "c(" + ", ".join(str(p) for p in self.entries) + ")"


@dataclass(frozen=True, eq=True)
class Certificate:
    conclusion: Relation
    rule: Rule
    children: tuple["Certificate", ...] = ()
    params: tuple[int, ...] = ()
    # leaves only: "oracle" (checked at verified_at), "cited" or "identity"
    provenance: Optional[str] = None
    verified_at: Optional[int] = None

    @property
    def entries(self) -> tuple[Partition, ...]:
        return self.conclusion.entries

    @property
    def size(self) -> int:
        return self.conclusion.size

    def leaves(self) -> Iterable["Certificate"]:
        stack = [self]
        while stack:
            node = stack.pop()
            if node.rule in LEAF_RULES:
                yield node
            stack.extend(reversed(node.children))


# -- axioms ------------------------------------------------------------------

def _oracle_positive(entries: Sequence[Partition]) -> bool:
    return extended_kronecker(entries) > 0


def axiom_trivial_pair(lam: Partition) -> Certificate:
    """c(lam, lam, 1_n), which holds since <chi, chi> = 1."""
    lam = as_partition(lam)
    return Certificate(Relation((lam, lam, row(lam.size))), Rule.AXIOM_TRIVIAL_PAIR, provenance="identity")


def axiom_symmetric_cube(lam: Partition) -> Certificate:
    """c(lam, lam, lam) for self-conjugate lam; oracle-checked when small enough."""
    lam = as_partition(lam)
    if conjugate(lam) != lam:
        raise PreconditionError(f"{lam} is not self-conjugate")
    relation = Relation((lam, lam, lam))
    if lam.size <= get_config().oracle_cap:
        if not _oracle_positive(relation.entries):
            raise VerificationError(f"oracle reports g = 0 for {relation}", "leaf")
        return Certificate(relation, Rule.AXIOM_SYMMETRIC_CUBE, provenance="oracle", verified_at=lam.size)
    return Certificate(relation, Rule.AXIOM_SYMMETRIC_CUBE, provenance="cited")


def axiom_oracle(entries: Sequence[Partition]) -> Certificate:
    relation = Relation(tuple(entries))
    if not _oracle_positive(relation.entries):
        raise PreconditionError(f"{relation} does not hold: extended Kronecker coefficient is 0")
    return Certificate(relation, Rule.AXIOM_ORACLE, provenance="oracle", verified_at=relation.size)


# -- combination rules -------------------------------------------------------

def _hsum_entries(a: Relation, b: Relation) -> tuple[Partition, ...]:
    return tuple(hsum(x, y) for x, y in zip(a.entries, b.entries))


def _vsum_entries(a: Relation, b: Relation, conj: frozenset[int]) -> tuple[Partition, ...]:
    return tuple(
        vsum(x, y) if i in conj else hsum(x, y) for i, (x, y) in enumerate(zip(a.entries, b.entries))
    )


def combine_hsum(a: Certificate, b: Certificate) -> Certificate:
    if a.conclusion.arity != b.conclusion.arity:
        raise InvalidArgumentError(f"arity mismatch: {a.conclusion.arity} vs {b.conclusion.arity}")
    return Certificate(Relation(_hsum_entries(a.conclusion, b.conclusion)), Rule.COMBINE_HSUM, (a, b))


def combine_vsum(a: Certificate, b: Certificate, conj_indices: Iterable[int]) -> Certificate:
    """Vertical sums at conj_indices, horizontal sums elsewhere.

    Only an even number of vertically summed positions is sound: vertically
    adding all three entries of c((1),(1),(1)) would give c((1,1),(1,1),(1,1)),
    which is false.
    """
    conj = frozenset(conj_indices)
    k = a.conclusion.arity
    if k != b.conclusion.arity:
        raise InvalidArgumentError(f"arity mismatch: {k} vs {b.conclusion.arity}")
    if any(i < 0 or i >= k for i in conj):
        raise InvalidArgumentError(f"conjugation indices {sorted(conj)} out of range for arity {k}")
    if len(conj) % 2:
        raise InvalidArgumentError(
            f"vertical summation needs an even number of positions, got {len(conj)}; "
            "the sign representation of S_2 does not contain the trivial one"
        )
    entries = _vsum_entries(a.conclusion, b.conclusion, conj)
    return Certificate(Relation(entries), Rule.COMBINE_VSUM, (a, b), tuple(sorted(conj)))


def conjugate_pair(a: Certificate, i: int, j: int) -> Certificate:
    k = a.conclusion.arity
    if i == j or not (0 <= i < k and 0 <= j < k):
        raise InvalidArgumentError(f"conjugate_pair needs two distinct indices below {k}, got {i}, {j}")
    entries = list(a.entries)
    entries[i], entries[j] = conjugate(entries[i]), conjugate(entries[j])
    return Certificate(Relation(tuple(entries)), Rule.CONJUGATE_PAIR, (a,), (i, j))


def permute(a: Certificate, permutation: Sequence[int]) -> Certificate:
    """Reorder entries: the new entry i is the old entry permutation[i]."""
    perm = tuple(permutation)
    if sorted(perm) != list(range(a.conclusion.arity)):
        raise InvalidArgumentError(f"{list(perm)} is not a permutation of 0..{a.conclusion.arity - 1}")
    return Certificate(Relation(tuple(a.entries[p] for p in perm)), Rule.PERMUTE, (a,), perm)


def splice(a: Certificate, i: int, b: Certificate, j: int) -> Certificate:
    """c(A, x) and c(B, x) give c(A, B): x lies in both products, and x x x contains 1."""
    if not (0 <= i < a.conclusion.arity and 0 <= j < b.conclusion.arity):
        raise InvalidArgumentError(f"splice indices {i}, {j} out of range")
    if a.entries[i] != b.entries[j]:
        raise PreconditionError(f"splice needs equal entries, got {a.entries[i]} and {b.entries[j]}")
    entries = a.entries[:i] + a.entries[i + 1:] + b.entries[:j] + b.entries[j + 1:]
    if len(entries) < 3:
        raise InvalidArgumentError("splice would leave fewer than 3 entries")
    return Certificate(Relation(entries), Rule.SPLICE, (a, b), (i, j))


def hsum_all(certs: Sequence[Certificate]) -> Certificate:
    """Balanced horizontal sum of many certificates (keeps trees shallow)."""
    if not certs:
        raise InvalidArgumentError("nothing to combine")
    level = list(certs)
    while len(level) > 1:
        nxt = [combine_hsum(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


def vsum_all(certs: Sequence[Certificate], conj_indices: Iterable[int]) -> Certificate:
    conj = frozenset(conj_indices)
    if not certs:
        raise InvalidArgumentError("nothing to combine")
    level = list(certs)
    while len(level) > 1:
        nxt = [combine_vsum(level[i], level[i + 1], conj) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


# -- verification ------------------------------------------------------------

class VerificationReport(BaseModel):
    mode: Literal["structural", "leaves", "full"]
    passed: bool = True
    conclusion: str
    size: int
    nodes_checked: int = 0
    leaves_verified: int = 0
    unverified_leaves: list[str] = Field(default_factory=list)
    root_coefficient: Optional[int] = None


def _expected_entries(node: Certificate, path: str) -> tuple[Partition, ...]:
    rule, kids, params = node.rule, node.children, node.params
    arity_needed = {Rule.COMBINE_HSUM: 2, Rule.COMBINE_VSUM: 2, Rule.SPLICE: 2,
                    Rule.CONJUGATE_PAIR: 1, Rule.PERMUTE: 1}
    if rule in LEAF_RULES:
        if kids:
            raise VerificationError("axiom leaf has children", path)
    elif len(kids) != arity_needed[rule]:
        raise VerificationError(f"{rule.value} needs {arity_needed[rule]} children, has {len(kids)}", path)

    if rule is Rule.AXIOM_TRIVIAL_PAIR:
        lam = node.entries[0]
        if node.conclusion.arity != 3 or node.entries[1] != lam or node.entries[2] != row(lam.size):
            raise VerificationError(f"{node.conclusion} is not of the form c(l, l, 1_n)", path)
        return node.entries
    if rule is Rule.AXIOM_SYMMETRIC_CUBE:
        lam = node.entries[0]
        if node.conclusion.arity != 3 or set(node.entries) != {lam} or conjugate(lam) != lam:
            raise VerificationError(f"{node.conclusion} is not c(l, l, l) with l self-conjugate", path)
        return node.entries
    if rule is Rule.AXIOM_ORACLE:
        return node.entries

    first = kids[0].conclusion
    if rule in (Rule.COMBINE_HSUM, Rule.COMBINE_VSUM):
        second = kids[1].conclusion
        if first.arity != second.arity:
            raise VerificationError("children have different arities", path)
        if rule is Rule.COMBINE_HSUM:
            return _hsum_entries(first, second)
        conj = frozenset(params)
        if len(conj) % 2 or len(conj) != len(params) or any(not 0 <= i < first.arity for i in conj):
            raise VerificationError(f"invalid vertical positions {list(params)}", path)
        return _vsum_entries(first, second, conj)
    if rule is Rule.CONJUGATE_PAIR:
        if len(params) != 2 or params[0] == params[1] or any(not 0 <= i < first.arity for i in params):
            raise VerificationError(f"invalid conjugation pair {list(params)}", path)
        entries = list(first.entries)
        for i in params:
            entries[i] = conjugate(entries[i])
        return tuple(entries)
    if rule is Rule.PERMUTE:
        if sorted(params) != list(range(first.arity)):
            raise VerificationError(f"{list(params)} is not a permutation", path)
        return tuple(first.entries[p] for p in params)
    # splice
    second = kids[1].conclusion
    if len(params) != 2:
        raise VerificationError("splice needs two indices", path)
    i, j = params
    if not (0 <= i < first.arity and 0 <= j < second.arity) or first.entries[i] != second.entries[j]:
        raise VerificationError("spliced entries differ", path)
    return first.entries[:i] + first.entries[i + 1:] + second.entries[:j] + second.entries[j + 1:]


def verify_certificate(cert: Certificate, mode: str = "structural") -> VerificationReport:
    """Recheck every node; optionally recheck leaves and the root with the oracle.

    Raises VerificationError naming the path (``root/1/0``) of the first bad node.
    """
    if mode not in ("structural", "leaves", "full"):
        raise InvalidArgumentError(f"unknown verification mode {mode!r}")
    cap = get_config().oracle_cap
    report = VerificationReport(mode=mode, conclusion=str(cert.conclusion), size=cert.size)
    seen: set[int] = set()

    with tracer.start_as_current_span("verify_certificate") as span:
        span.set_attribute("mode", mode)
        span.set_attribute("size", cert.size)
        stack = [(cert, "root")]
        while stack:
            node, path = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            report.nodes_checked += 1
            if _expected_entries(node, path) != node.entries:
                raise VerificationError(f"conclusion {node.conclusion} does not follow from its children", path)
            if node.rule in LEAF_RULES and mode != "structural" and node.rule is not Rule.AXIOM_TRIVIAL_PAIR:
                if node.size <= cap:
                    if not _oracle_positive(node.entries):
                        raise VerificationError(f"oracle reports g = 0 for leaf {node.conclusion}", path)
                    report.leaves_verified += 1
                else:
                    report.unverified_leaves.append(f"{path}: {node.conclusion}")
            for idx in range(len(node.children) - 1, -1, -1):
                stack.append((node.children[idx], f"{path}/{idx}"))

        if mode == "full":
            if cert.size <= cap:
                value = extended_kronecker(cert.entries)
                report.root_coefficient = value
                if value <= 0:
                    raise VerificationError(f"root relation {cert.conclusion} has coefficient 0", "root")
            else:
                logger.info("root of size %d above oracle cap %d; not rechecked", cert.size, cap)
        span.set_attribute("nodes", report.nodes_checked)
        span.set_attribute("unverified", len(report.unverified_leaves))
    return report


# -- serialization -----------------------------------------------------------

class CertificateNode(BaseModel):
    id: int
    rule: Rule
    entries: list[str]
    children: list[int] = Field(default_factory=list)
    params: list[int] = Field(default_factory=list)
    provenance: Optional[str] = None
    verified_at: Optional[int] = None


class CertificateDocument(BaseModel):
    schema_name: Literal["sncover-certificate"] = Field(SCHEMA, alias="schema")
    version: int = SCHEMA_VERSION
    root: int
    nodes: list[CertificateNode]

    model_config = {"populate_by_name": True}


def to_document(cert: Certificate) -> CertificateDocument:
    """Post-order node list; structurally identical subtrees share one node."""
    ids: dict[tuple, int] = {}
    by_object: dict[int, int] = {}
    nodes: list[CertificateNode] = []

    def visit(node: Certificate) -> int:
        if id(node) in by_object:
            return by_object[id(node)]
        kids = [visit(child) for child in node.children]
        key = (node.rule, node.entries, tuple(kids), node.params, node.provenance, node.verified_at)
        if key not in ids:
            ids[key] = len(nodes)
            nodes.append(CertificateNode(
                id=len(nodes), rule=node.rule, entries=[str(p) for p in node.entries],
                children=kids, params=list(node.params),
                provenance=node.provenance, verified_at=node.verified_at,
            ))
        by_object[id(node)] = ids[key]
        return ids[key]

    root = visit(cert)
    return CertificateDocument(root=root, nodes=nodes)


def from_document(doc: CertificateDocument) -> Certificate:
    built: list[Certificate] = []
    for pos, node in enumerate(doc.nodes):
        where = f"nodes[{pos}]"
        if node.id != pos:
            raise CertificateParseError(f"node id {node.id} out of sequence", where)
        if any(c < 0 or c >= pos for c in node.children):
            raise CertificateParseError("children must refer to earlier nodes", where)
        try:
            relation = Relation(tuple(Partition.parse(s) for s in node.entries))
        except InvalidArgumentError as exc:
            raise CertificateParseError(str(exc), f"{where}.entries") from exc
        built.append(Certificate(
            relation, node.rule, tuple(built[c] for c in node.children), tuple(node.params),
            node.provenance, node.verified_at,
        ))
    if not 0 <= doc.root < len(built):
        raise CertificateParseError(f"root {doc.root} is not a node", "root")
    return built[doc.root]


def serialize(cert: Certificate) -> str:
    return to_document(cert).model_dump_json(by_alias=True, indent=2) + "\n"


def deserialize(text: str) -> Certificate:
    try:
        doc = CertificateDocument.model_validate_json(text)
    except ValidationError as exc:
        err = exc.errors()[0]
        location = ".".join(str(x) for x in err.get("loc", ())) or "document"
        if location == "version" or location == "schema":
            raise CertificateParseError(f"unsupported {location}: {err.get('msg')}", location) from exc
        raise CertificateParseError(err.get("msg", "invalid certificate"), location) from exc
    if doc.version != SCHEMA_VERSION:
        raise CertificateParseError(f"unsupported version {doc.version}, expected {SCHEMA_VERSION}", "version")
    return from_document(doc)
