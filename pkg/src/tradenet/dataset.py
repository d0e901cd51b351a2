"""Country export-profile corpus: parsing, validation, taxonomies, histograms.

The corpus is a small CSV table, one row per country, with columns
``name,code,org,dest1,dest2,prod1,prod2,export_value``. Each country carries
its two leading export destinations and its two leading export commodities
(2-digit HS chapters), plus the id of its regional organization. The module
also provides the three partition taxonomies used to group countries when
averaging network metrics:

- destination clusters (AfricanCountries, USA, Europe, China, Other),
- commodity clusters (Petroleum, RawMaterials, Diamonds, Manufactured,
  OtherRawMaterials),
- regional organizations (SADC, UMA, CEEAC, COMESA, CEDEAO).

Destination codes are opaque labels, not ISO codes (the corpus uses its own
abbreviations such as CHI, SWI, EMI, UK). Everything here is immutable after
construction and safe for concurrent reads.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

DESTINATION_AXIS = "destination"
COMMODITY_AXIS = "commodity"
AXES = (DESTINATION_AXIS, COMMODITY_AXIS)

ORGANIZATIONS = {1: "SADC", 2: "UMA", 3: "CEEAC", 4: "COMESA", 5: "CEDEAO"}
ORGANIZATION_ORDER = ("SADC", "UMA", "CEEAC", "COMESA", "CEDEAO")

# Fixed row order for destination-partition tables.
DESTINATION_CLUSTER_ORDER = ("AfricanCountries", "USA", "Europe", "China", "Other")

_DESTINATION_CLUSTERS = {
    "AfricanCountries": ("ZMB", "TZA", "BWA", "ZAF", "RWA", "BFA"),
    "USA": ("USA",),
    "China": ("CHI",),
    "Europe": ("FRA", "SWI", "NET", "ITA", "POL", "UK", "ESP", "POR", "BEL", "GER"),
    "Other": ("MAS", "IND", "EMI", "TUR", "BRA", "KOR", "JAP", "IDN", "LEB", "PAK"),
}

#: Total mapping over the 28 destination codes appearing in the corpus.
DESTINATION_TAXONOMY = {
    code: cluster for cluster, codes in _DESTINATION_CLUSTERS.items() for code in codes
}

# Fixed row order for commodity-partition tables.
COMMODITY_CLUSTER_ORDER = (
    "Petroleum",
    "RawMaterials",
    "Diamonds",
    "Manufactured",
    "OtherRawMaterials",
)

_COMMODITY_CLUSTERS = {
    "Petroleum": (27,),
    "RawMaterials": (3, 6, 8, 9, 10, 16, 17, 18, 24, 33, 44, 52),
    "Diamonds": (71,),
    "Manufactured": (28, 29, 39, 61, 62, 72, 74, 75, 76, 85, 87, 89),
    "OtherRawMaterials": (26,),
}

#: Total mapping over the 27 HS chapters appearing in the corpus.
COMMODITY_TAXONOMY = {
    code: cluster for cluster, codes in _COMMODITY_CLUSTERS.items() for code in codes
}

TAXONOMIES = ("destination", "commodity", "organization")

_HEADER = ("name", "code", "org", "dest1", "dest2", "prod1", "prod2", "export_value")


class DatasetError(ValueError):
    """Malformed corpus input (bad row shape, duplicate code, bad field)."""


@dataclass(frozen=True)
class CountryRecord:
    """One country's export profile.

    ``destinations`` is the ordered (first, second) pair of destination
    codes; ``commodities`` the ordered pair of 2-digit HS chapters.
    ``export_value`` is optional and used only for node sizing in exports.
    """

    name: str
    code: str
    org: int
    destinations: tuple[str, str]
    commodities: tuple[int, int]
    export_value: float | None = None


@dataclass(frozen=True)
class Dataset:
    """Ordered, code-unique collection of country records."""

    records: tuple[CountryRecord, ...]
    source_label: str = "<memory>"

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def codes(self) -> tuple[str, ...]:
        return tuple(r.code for r in self.records)

    def by_code(self, code: str) -> CountryRecord:
        for r in self.records:
            if r.code == code:
                return r
        raise KeyError(f"unknown country code {code!r}")

    def entities(self, code: str, axis: str) -> tuple[str, str]:
        """The record's ordered entity-label pair for the given axis."""
        r = self.by_code(code)
        if axis == DESTINATION_AXIS:
            return r.destinations
        if axis == COMMODITY_AXIS:
            return tuple(str(c) for c in r.commodities)
        raise ValueError(f"unknown axis {axis!r}")


def _parse_row(line_no: int, row: list[str]) -> CountryRecord:
    if len(row) != len(_HEADER):
        raise DatasetError(f"row {line_no}: expected {len(_HEADER)} columns, got {len(row)}")
    name, code, org_s, d1, d2, p1, p2, value_s = (f.strip() for f in row)
    if not name:
        raise DatasetError(f"row {line_no}: empty name")
    if len(code) != 3 or not code.isalpha() or not code.isupper():
        raise DatasetError(f"row {line_no}: country code must be 3 uppercase letters, got {code!r}")
    try:
        org = int(org_s)
    except ValueError:
        raise DatasetError(f"row {line_no}: non-integer org {org_s!r}") from None
    if org not in ORGANIZATIONS:
        raise DatasetError(f"row {line_no}: org must be in 1..5, got {org}")
    if not d1 or not d2:
        raise DatasetError(f"row {line_no}: empty destination code")
    if d1 == d2:
        raise DatasetError(f"row {line_no}: dest1 equals dest2 ({d1!r})")
    try:
        hs1, hs2 = int(p1), int(p2)
    except ValueError:
        raise DatasetError(f"row {line_no}: non-integer HS code {p1!r}/{p2!r}") from None
    if not (1 <= hs1 <= 99 and 1 <= hs2 <= 99):
        raise DatasetError(f"row {line_no}: HS chapter out of range 1..99 ({hs1}, {hs2})")
    if hs1 == hs2:
        raise DatasetError(f"row {line_no}: prod1 equals prod2 ({hs1})")
    value: float | None = None
    if value_s:
        try:
            value = float(value_s)
        except ValueError:
            raise DatasetError(f"row {line_no}: non-numeric export_value {value_s!r}") from None
        if value < 0:
            raise DatasetError(f"row {line_no}: negative export_value {value}")
    return CountryRecord(name, code, org, (d1, d2), (hs1, hs2), value)


def parse_dataset(text: str, source_label: str = "<string>") -> Dataset:
    """Parse delimited corpus text into a Dataset.

    The first row must be the header. Raises DatasetError naming the file
    line and the violated rule for any malformed row, duplicate country
    code, or empty dataset.
    """
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise DatasetError("empty input, header row required")
    header = tuple(f.strip() for f in rows[0])
    if header != _HEADER:
        raise DatasetError(f"bad header {header!r}, expected {_HEADER!r}")
    records = []
    seen: set[str] = set()
    for i, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # ignore blank lines
        rec = _parse_row(i, row)
        if rec.code in seen:
            raise DatasetError(f"row {i}: duplicate code {rec.code!r}")
        seen.add(rec.code)
        records.append(rec)
    if not records:
        raise DatasetError("empty dataset")
    return Dataset(tuple(records), source_label)


def load_dataset(path: str | Path) -> Dataset:
    """Read and parse a corpus CSV file."""
    p = Path(path)
    return parse_dataset(p.read_text(encoding="utf-8"), source_label=str(p))


def serialize_dataset(ds: Dataset) -> str:
    """Render a Dataset back to corpus CSV text (parse round-trips)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_HEADER)
    for r in ds.records:
        value = "" if r.export_value is None else repr(r.export_value)
        w.writerow([r.name, r.code, r.org, *r.destinations, *r.commodities, value])
    return buf.getvalue()


def validate(
    ds: Dataset,
    dt: dict[str, str] | None = None,
    ct: dict[int, str] | None = None,
) -> list[str]:
    """Check dataset invariants and taxonomy coverage.

    Returns a list of human-readable violations, empty when the dataset is
    fully covered by both taxonomies and internally consistent. Violations
    are returned rather than raised so callers can report all of them.
    """
    dt = DESTINATION_TAXONOMY if dt is None else dt
    ct = COMMODITY_TAXONOMY if ct is None else ct
    violations = []
    if not ds.records:
        violations.append("empty dataset")
    seen: set[str] = set()
    for r in ds.records:
        if r.code in seen:
            violations.append(f"{r.code}: duplicate code")
        seen.add(r.code)
        if r.org not in ORGANIZATIONS:
            violations.append(f"{r.code}: unknown organization id {r.org}")
        if r.destinations[0] == r.destinations[1]:
            violations.append(f"{r.code}: repeated destination {r.destinations[0]!r}")
        if r.commodities[0] == r.commodities[1]:
            violations.append(f"{r.code}: repeated commodity {r.commodities[0]}")
        for d in r.destinations:
            if d not in dt:
                violations.append(f"{r.code}: unmapped destination {d!r}")
        for c in r.commodities:
            if c not in ct:
                violations.append(f"{r.code}: unmapped commodity {c}")
        if r.export_value is not None and r.export_value < 0:
            violations.append(f"{r.code}: negative export_value {r.export_value}")
    return violations


def classify_destination(code: str, dt: dict[str, str] | None = None) -> str:
    """Cluster name for a destination code. Raises KeyError when unmapped."""
    dt = DESTINATION_TAXONOMY if dt is None else dt
    try:
        return dt[code]
    except KeyError:
        raise KeyError(f"unmapped destination code {code!r}") from None


def classify_commodity(hs_code: int, ct: dict[int, str] | None = None) -> str:
    """Cluster name for an HS chapter. Raises KeyError when unmapped."""
    ct = COMMODITY_TAXONOMY if ct is None else ct
    try:
        return ct[hs_code]
    except KeyError:
        raise KeyError(f"unmapped commodity chapter {hs_code!r}") from None


def frequency_histogram(
    ds: Dataset, axis: str, aggregation: str = "raw"
) -> list[tuple[str, int]]:
    """Frequencies of first+second entries over the chosen axis.

    Every record contributes both of its entries, so counts sum to 2N.
    With ``aggregation="cluster"`` counts are summed per taxonomy cluster.
    Entries are ordered by descending count, ties broken lexicographically
    by label. Commodity labels are the HS chapters as decimal strings.
    """
    if axis not in AXES:
        raise ValueError(f"unknown axis {axis!r}")
    if aggregation not in ("raw", "cluster"):
        raise ValueError(f"unknown aggregation {aggregation!r}")
    counts: Counter[str] = Counter()
    for r in ds.records:
        entries = r.destinations if axis == DESTINATION_AXIS else r.commodities
        for e in entries:
            if aggregation == "cluster":
                label = classify_destination(e) if axis == DESTINATION_AXIS else classify_commodity(e)
            else:
                label = str(e)
            counts[label] += 1
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


def partition_labels(ds: Dataset, taxonomy: str) -> dict[str, str]:
    """Country -> partition label under one of the three taxonomies.

    The destination and commodity taxonomies classify each country by the
    cluster of its FIRST (main) entry; the organization taxonomy uses the
    org column.
    """
    if taxonomy == "destination":
        return {r.code: classify_destination(r.destinations[0]) for r in ds.records}
    if taxonomy == "commodity":
        return {r.code: classify_commodity(r.commodities[0]) for r in ds.records}
    if taxonomy == "organization":
        return {r.code: ORGANIZATIONS[r.org] for r in ds.records}
    raise ValueError(f"unknown taxonomy {taxonomy!r}")


def taxonomy_order(taxonomy: str) -> tuple[str, ...]:
    """Fixed table row order for a taxonomy's partitions."""
    if taxonomy == "destination":
        return DESTINATION_CLUSTER_ORDER
    if taxonomy == "commodity":
        return COMMODITY_CLUSTER_ORDER
    if taxonomy == "organization":
        return ORGANIZATION_ORDER
    raise ValueError(f"unknown taxonomy {taxonomy!r}")
