#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fronts/errors.hpp"
#include "fronts/record.hpp"
#include "fronts/rng.hpp"

using namespace fronts;

TEST_CASE("normalize_name uppercases and strips punctuation") {
    CHECK(normalize_name("Camilleri J") == "CAMILLERI J");
    CHECK(normalize_name("Ilie, N.") == "ILIE N");
    CHECK(normalize_name("ILIE N") == "ILIE N");
    CHECK(normalize_name("Garcia-Godoy F") == "GARCIAGODOY F");
    CHECK(normalize_name("  Van  der  Berg   K ") == "VAN DER BERG K");
    CHECK(normalize_name("") == "");
}

TEST_CASE("normalize_name is idempotent") {
    const char* samples[] = {"Ilie, N.", "Zitzmann NU", "J. Clin. Periodontol.",
                             "  mixed Case-with, stuff  ", "Müller K"};
    for (auto s : samples) {
        std::string once = normalize_name(s);
        CHECK(normalize_name(once) == once);
    }
}

TEST_CASE("record_key builds the normalized key") {
    Record r;
    r.accession_id = "X1";
    r.authors = {"Camilleri J"};
    r.year = 2007;
    r.source = "INT ENDOD J";
    r.volume = "40";
    r.start_page = "462";
    RefKey key = record_key(r);
    CHECK(key.first_author == "CAMILLERI J");
    CHECK(key.year == 2007);
    CHECK(key.source == "INT ENDOD J");
    CHECK(key.volume == "40");
    CHECK(key.start_page == "462");
    CHECK_FALSE(key.doi.has_value());
}

TEST_CASE("record_key errors on missing authors or year") {
    Record r;
    r.accession_id = "X1";
    r.year = 2007;
    CHECK_THROWS_AS(record_key(r), DataError);
    r.authors = {"Smith J"};
    r.year = 0;
    CHECK_THROWS_AS(record_key(r), DataError);
}

TEST_CASE("author spellings normalize to equal keys") {
    Record a, b;
    a.accession_id = "A";
    b.accession_id = "B";
    a.authors = {"Ilie, N."};
    b.authors = {"ILIE N"};
    a.year = b.year = 2009;
    a.source = "DENT MATER";
    b.source = "Dent Mater";
    a.volume = b.volume = "25";
    a.start_page = b.start_page = "810";
    CHECK(record_key(a) == record_key(b));
}

TEST_CASE("parse_cited_ref parses the standard form") {
    CitedRef ref = parse_cited_ref("Beun S, 2007, DENT MATER, V23, P51");
    REQUIRE(ref.key.has_value());
    CHECK(ref.key->first_author == "BEUN S");
    CHECK(ref.key->year == 2007);
    CHECK(ref.key->source == "DENT MATER");
    CHECK(ref.key->volume == "23");
    CHECK(ref.key->start_page == "51");
    CHECK_FALSE(ref.key->doi.has_value());
    CHECK(ref.raw == "Beun S, 2007, DENT MATER, V23, P51");
}

TEST_CASE("parse_cited_ref keeps unparseable lines raw") {
    CitedRef ref = parse_cited_ref("completely unstructured text");
    CHECK_FALSE(ref.key.has_value());
    CHECK(ref.raw == "completely unstructured text");

    CHECK_FALSE(parse_cited_ref("").key.has_value());
    CHECK_FALSE(parse_cited_ref("Author only, no year here, x").key.has_value());
}

TEST_CASE("parse_cited_ref captures and lowercases a DOI") {
    CitedRef ref = parse_cited_ref("Sailer I, 2009, INT J PROSTHODONT, V22, P553, DOI 10.1000/X");
    REQUIRE(ref.key.has_value());
    CHECK(ref.key->doi == "10.1000/x");
    CHECK(ref.key->volume == "22");
    CHECK(ref.key->start_page == "553");
}

TEST_CASE("parse_cited_ref without volume or page") {
    CitedRef ref = parse_cited_ref("Anusavice KJ, 2013, PHILLIPS SCI DENT MAT");
    REQUIRE(ref.key.has_value());
    CHECK_FALSE(ref.key->volume.has_value());
    CHECK_FALSE(ref.key->start_page.has_value());
}

TEST_CASE("render then reparse agrees with record_key on synthetic records") {
    Rng rng(2024);
    const char* sources[] = {"DENT MATER", "J CLIN PERIODONTOL", "INT ENDOD J",
                             "CLIN ORAL IMPLAN RES"};
    for (int i = 0; i < 1000; ++i) {
        Record r;
        r.accession_id = "R" + std::to_string(i);
        r.authors = {"Author" + std::to_string(rng.next_below(500)) + " " +
                     std::string(1, static_cast<char>('A' + rng.next_below(26)))};
        r.year = 2007 + static_cast<int>(rng.next_below(11));
        r.source = sources[rng.next_below(4)];
        if (rng.next_below(4) != 0) r.volume = std::to_string(1 + rng.next_below(99));
        if (rng.next_below(4) != 0) r.start_page = std::to_string(1 + rng.next_below(999));
        if (rng.next_below(3) == 0)
            r.doi = "10." + std::to_string(1000 + rng.next_below(9000)) + "/ab" +
                    std::to_string(rng.next_below(100));
        CitedRef ref = parse_cited_ref(render_reference(r));
        REQUIRE(ref.key.has_value());
        CHECK(*ref.key == record_key(r));
    }
}
