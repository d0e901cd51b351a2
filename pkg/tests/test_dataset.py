import random

import pytest

from tradenet.dataset import (
    COMMODITY_CLUSTER_ORDER,
    COMMODITY_TAXONOMY,
    DESTINATION_CLUSTER_ORDER,
    DESTINATION_TAXONOMY,
    ORGANIZATIONS,
    CountryRecord,
    Dataset,
    DatasetError,
    classify_commodity,
    classify_destination,
    frequency_histogram,
    parse_dataset,
    partition_labels,
    serialize_dataset,
    taxonomy_order,
    validate,
)

HEADER = "name,code,org,dest1,dest2,prod1,prod2,export_value"


def make_text(*rows: str) -> str:
    return "\n".join([HEADER, *rows]) + "\n"


class TestParse:
    def test_single_row(self):
        ds = parse_dataset(make_text("Angola,AGO,1,CHI,USA,27,71,"))
        rec = ds.records[0]
        assert rec.name == "Angola"
        assert rec.code == "AGO"
        assert rec.org == 1
        assert rec.destinations == ("CHI", "USA")
        assert rec.commodities == (27, 71)
        assert rec.export_value is None

    def test_export_value_parsed(self):
        ds = parse_dataset(make_text("Angola,AGO,1,CHI,USA,27,71,12.5"))
        assert ds.records[0].export_value == 12.5

    def test_duplicate_code(self):
        text = make_text("Angola,AGO,1,CHI,USA,27,71,", "Angola2,AGO,2,FRA,USA,27,71,")
        with pytest.raises(DatasetError, match="duplicate code"):
            parse_dataset(text)

    def test_empty_after_header(self):
        with pytest.raises(DatasetError, match="empty dataset"):
            parse_dataset(HEADER + "\n")

    def test_missing_header(self):
        with pytest.raises(DatasetError, match="header"):
            parse_dataset("Angola,AGO,1,CHI,USA,27,71,\n")

    def test_wrong_arity(self):
        with pytest.raises(DatasetError, match="columns"):
            parse_dataset(make_text("Angola,AGO,1,CHI,USA,27"))

    def test_equal_destinations(self):
        with pytest.raises(DatasetError, match="dest1 equals dest2"):
            parse_dataset(make_text("Angola,AGO,1,CHI,CHI,27,71,"))

    def test_equal_commodities(self):
        with pytest.raises(DatasetError, match="prod1 equals prod2"):
            parse_dataset(make_text("Angola,AGO,1,CHI,USA,27,27,"))

    def test_non_integer_org(self):
        with pytest.raises(DatasetError, match="non-integer org"):
            parse_dataset(make_text("Angola,AGO,x,CHI,USA,27,71,"))

    def test_org_out_of_range(self):
        with pytest.raises(DatasetError, match="org"):
            parse_dataset(make_text("Angola,AGO,6,CHI,USA,27,71,"))

    def test_non_integer_hs(self):
        with pytest.raises(DatasetError, match="non-integer HS"):
            parse_dataset(make_text("Angola,AGO,1,CHI,USA,oil,71,"))

    def test_bad_country_code(self):
        with pytest.raises(DatasetError, match="3 uppercase letters"):
            parse_dataset(make_text("Angola,ago,1,CHI,USA,27,71,"))

    def test_negative_export_value(self):
        with pytest.raises(DatasetError, match="negative export_value"):
            parse_dataset(make_text("Angola,AGO,1,CHI,USA,27,71,-3"))

    def test_error_names_row_number(self):
        text = make_text("Angola,AGO,1,CHI,USA,27,71,", "Benin,BEN,5,BFA,BFA,52,27,")
        with pytest.raises(DatasetError, match="row 3"):
            parse_dataset(text)

    def test_round_trip(self, corpus):
        again = parse_dataset(serialize_dataset(corpus))
        assert again.records == corpus.records

    def test_round_trip_with_values(self):
        ds = parse_dataset(make_text("Angola,AGO,1,CHI,USA,27,71,1250000.5"))
        assert parse_dataset(serialize_dataset(ds)).records == ds.records


class TestTaxonomies:
    def test_destination_coverage(self):
        assert len(DESTINATION_TAXONOMY) == 28
        sizes = [
            sum(1 for c in DESTINATION_TAXONOMY.values() if c == cluster)
            for cluster in DESTINATION_CLUSTER_ORDER
        ]
        assert sizes == [6, 1, 10, 1, 10]

    def test_commodity_coverage(self):
        assert len(COMMODITY_TAXONOMY) == 27
        sizes = [
            sum(1 for c in COMMODITY_TAXONOMY.values() if c == cluster)
            for cluster in COMMODITY_CLUSTER_ORDER
        ]
        assert sizes == [1, 12, 1, 12, 1]

    def test_classify_destination(self):
        assert classify_destination("CHI") == "China"
        assert classify_destination("FRA") == "Europe"
        assert classify_destination("ZMB") == "AfricanCountries"
        with pytest.raises(KeyError, match="unmapped destination"):
            classify_destination("XXX")

    def test_classify_commodity(self):
        assert classify_commodity(27) == "Petroleum"
        assert classify_commodity(71) == "Diamonds"
        assert classify_commodity(52) == "RawMaterials"
        assert classify_commodity(26) == "OtherRawMaterials"
        assert classify_commodity(85) == "Manufactured"
        with pytest.raises(KeyError, match="unmapped commodity"):
            classify_commodity(99)

    def test_taxonomy_order(self):
        assert taxonomy_order("organization") == ("SADC", "UMA", "CEEAC", "COMESA", "CEDEAO")
        with pytest.raises(ValueError):
            taxonomy_order("nope")


class TestValidate:
    def test_bundled_corpus_clean(self, corpus):
        assert validate(corpus) == []

    def test_unmapped_destination(self):
        rec = CountryRecord("X", "XAA", 1, ("XXX", "CHI"), (27, 71))
        out = validate(Dataset((rec,)))
        assert out == ["XAA: unmapped destination 'XXX'"]

    def test_unmapped_commodity(self):
        rec = CountryRecord("X", "XAA", 1, ("FRA", "CHI"), (99, 71))
        out = validate(Dataset((rec,)))
        assert out == ["XAA: unmapped commodity 99"]

    def test_multiple_violations_reported(self):
        recs = (
            CountryRecord("X", "XAA", 9, ("XXX", "CHI"), (27, 71)),
            CountryRecord("Y", "XAA", 1, ("FRA", "FRA"), (27, 27)),
        )
        out = validate(Dataset(recs))
        # bad org + unmapped dest, then duplicate code + repeated dest + repeated prod
        assert len(out) == 5

    def test_corpus_codes_unique(self, corpus):
        codes = corpus.codes()
        assert len(codes) == 49
        assert len(set(codes)) == 49


class TestHistogram:
    def test_counts_sum_to_2n(self, corpus):
        n = len(corpus)
        for axis in ("destination", "commodity"):
            for agg in ("raw", "cluster"):
                hist = frequency_histogram(corpus, axis, agg)
                assert sum(c for _, c in hist) == 2 * n

    def test_cluster_counts_are_raw_sums(self, corpus):
        raw = dict(frequency_histogram(corpus, "destination", "raw"))
        cluster = dict(frequency_histogram(corpus, "destination", "cluster"))
        for name in cluster:
            member_sum = sum(
                count for code, count in raw.items() if DESTINATION_TAXONOMY[code] == name
            )
            assert cluster[name] == member_sum

    def test_ordering(self, corpus):
        hist = frequency_histogram(corpus, "destination", "raw")
        keys = [(-c, label) for label, c in hist]
        assert keys == sorted(keys)

    def test_corpus_destination_facts(self, corpus):
        hist = frequency_histogram(corpus, "destination", "raw")
        assert hist[0][0] == "CHI"
        assert {label for label, _ in hist[:5]} == {"CHI", "ZAF", "SWI", "FRA", "IND"}

    def test_corpus_cluster_facts(self, corpus):
        hist = frequency_histogram(corpus, "destination", "cluster")
        assert hist[0][0] == "Europe"
        assert hist[1][0] == "China"

    def test_corpus_commodity_facts(self, corpus):
        hist = frequency_histogram(corpus, "commodity", "raw")
        assert hist[0][0] == "27"

    def test_random_datasets_sum_invariant(self):
        from _support import random_dataset

        rng = random.Random(7)
        for _ in range(50):
            ds = random_dataset(rng, rng.randint(1, 8))
            hist = frequency_histogram(ds, "commodity", "raw")
            assert sum(c for _, c in hist) == 2 * len(ds)

    def test_bad_arguments(self, corpus):
        with pytest.raises(ValueError):
            frequency_histogram(corpus, "nope")
        with pytest.raises(ValueError):
            frequency_histogram(corpus, "destination", "nope")


class TestPartitionLabels:
    def test_first_entry_semantics(self, corpus):
        labels = partition_labels(corpus, "destination")
        assert labels["AGO"] == "China"  # first destination CHI
        assert labels["SEY"] == "Europe"  # first destination FRA
        clabels = partition_labels(corpus, "commodity")
        assert clabels["AGO"] == "Petroleum"  # first commodity 27

    def test_organization_labels(self, corpus):
        labels = partition_labels(corpus, "organization")
        assert labels["SEY"] == "SADC"
        assert labels["GIN"] == "CEDEAO"
        assert set(labels.values()) == set(ORGANIZATIONS.values())

    def test_unknown_taxonomy(self, corpus):
        with pytest.raises(ValueError):
            partition_labels(corpus, "nope")
