#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "foilgen/dataset.hpp"
#include "foilgen/errors.hpp"
#include "foilgen/geometry.hpp"
#include "foilgen/rng.hpp"

using namespace foilgen;
using namespace foilgen::dataset;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "foilgen-dataset-tests";
    fs::create_directories(dir);
    return dir / name;
}

geometry::CanonicalAirfoil shape_with_thickness(double tau) {
    geometry::CanonicalAirfoil a;
    for (int i = 1; i <= 18; ++i) {
        a.y[i] = tau / 2.0;
        a.y[geometry::mirror_index(i)] = -tau / 2.0;
    }
    return a;
}

PerformanceRecord record(const std::string& id, double alpha, double cl, double cd) {
    PerformanceRecord r;
    r.airfoil_id = id;
    r.reynolds = 5e6;
    r.mach = 0.1;
    r.alpha = alpha;
    r.cl = cl;
    r.cd = cd;
    return r;
}

}  // namespace

TEST_CASE("label encoding matches the paired one-hot layout") {
    const LabelVector v011 = encode_label(ClassLabel{false, true, true});
    const std::array<double, 6> expected011 = {1, 0, 0, 1, 0, 1};
    CHECK(v011.v == expected011);

    const LabelVector v000 = encode_label(ClassLabel{false, false, false});
    const std::array<double, 6> expected000 = {1, 0, 1, 0, 1, 0};
    CHECK(v000.v == expected000);

    const LabelVector v111 = encode_label(ClassLabel{true, true, true});
    const std::array<double, 6> expected111 = {0, 1, 0, 1, 0, 1};
    CHECK(v111.v == expected111);
}

TEST_CASE("label encoding is injective and every pair sums to one") {
    std::set<std::array<double, 6>> seen;
    for (const ClassLabel& c : ClassLabel::all()) {
        const LabelVector v = encode_label(c);
        for (int pair = 0; pair < 3; ++pair) {
            CHECK(v.v[2 * pair] + v.v[2 * pair + 1] == 1.0);
        }
        seen.insert(v.v);
        CHECK(decode_label(v) == c);  // decoding inverts encoding
    }
    CHECK(seen.size() == 8);
}

TEST_CASE("class labels print and parse as 3-bit strings") {
    CHECK(ClassLabel{false, true, true}.to_string() == "011");
    CHECK(ClassLabel{true, false, false}.to_string() == "100");
    CHECK(ClassLabel::from_string("011") == ClassLabel{false, true, true});
    for (const ClassLabel& c : ClassLabel::all()) {
        CHECK(ClassLabel::from_string(c.to_string()) == c);
    }
    CHECK_THROWS_AS(ClassLabel::from_string("01"), ParseError);
    CHECK_THROWS_AS(ClassLabel::from_string("0121"), ParseError);
    CHECK_THROWS_AS(ClassLabel::from_string("01x"), ParseError);
}

TEST_CASE("a record above all thresholds lands in class 111") {
    const std::vector<std::pair<std::string, geometry::CanonicalAirfoil>> foils = {
        {"a", shape_with_thickness(0.20)}};
    const std::vector<PerformanceRecord> recs = {record("a", 20.0, 1.5, 0.01)};  // cl/cd = 150
    const AssignResult res = assign_classes(foils, recs, {});
    REQUIRE(res.dataset.entries.size() == 1);
    CHECK(res.dataset.entries[0].label == ClassLabel{true, true, true});
    CHECK(res.dataset.entries[0].airfoil_id == "a");
    CHECK(res.skipped_records == 0);
}

TEST_CASE("ties at a threshold classify as low") {
    const std::vector<std::pair<std::string, geometry::CanonicalAirfoil>> foils = {
        {"a", shape_with_thickness(0.12)}};  // tau exactly at the default threshold
    const std::vector<PerformanceRecord> recs = {record("a", 10.0, 1.0, 0.01)};  // cl/cd = 100
    const AssignResult res = assign_classes(foils, recs, {});
    REQUIRE(res.dataset.entries.size() == 1);
    CHECK(res.dataset.entries[0].label == ClassLabel{false, false, false});
}

TEST_CASE("an airfoil enters each class at most once") {
    const std::vector<std::pair<std::string, geometry::CanonicalAirfoil>> foils = {
        {"a", shape_with_thickness(0.05)}};
    const std::vector<PerformanceRecord> recs = {
        record("a", 15.0, 1.2, 0.01),  // class 110
        record("a", 15.0, 1.4, 0.01),  // class 110 again
        record("a", 5.0, 1.2, 0.01),   // class 100
    };
    const AssignResult res = assign_classes(foils, recs, {});
    REQUIRE(res.dataset.entries.size() == 2);
    std::set<std::string> classes;
    for (const Entry& e : res.dataset.entries) classes.insert(e.label.to_string());
    CHECK(classes == std::set<std::string>{"110", "100"});
}

TEST_CASE("zero-drag records are skipped and counted") {
    const std::vector<std::pair<std::string, geometry::CanonicalAirfoil>> foils = {
        {"a", shape_with_thickness(0.05)}};
    const std::vector<PerformanceRecord> recs = {record("a", 15.0, 1.2, 0.0),
                                                 record("a", 15.0, 1.2, 0.01)};
    const AssignResult res = assign_classes(foils, recs, {});
    CHECK(res.skipped_records == 1);
    CHECK(res.dataset.entries.size() == 1);
}

TEST_CASE("records naming unknown airfoils are an error") {
    const std::vector<std::pair<std::string, geometry::CanonicalAirfoil>> foils = {
        {"a", shape_with_thickness(0.05)}};
    const std::vector<PerformanceRecord> recs = {record("ghost", 15.0, 1.2, 0.01)};
    CHECK_THROWS_AS(assign_classes(foils, recs, {}), ReferenceError);
}

TEST_CASE("non-positive thresholds are rejected") {
    const std::vector<std::pair<std::string, geometry::CanonicalAirfoil>> foils = {
        {"a", shape_with_thickness(0.05)}};
    const std::vector<PerformanceRecord> recs = {record("a", 15.0, 1.2, 0.01)};
    Thresholds bad;
    bad.alpha = 0.0;
    CHECK_THROWS_AS(assign_classes(foils, recs, bad), DomainError);
    bad = Thresholds{};
    bad.tau = -0.1;
    CHECK_THROWS_AS(assign_classes(foils, recs, bad), DomainError);
}

TEST_CASE("classification agrees with a brute-force oracle on random corpora") {
    rng::SplitMix64 gen(17);
    const Thresholds th;
    std::vector<std::pair<std::string, geometry::CanonicalAirfoil>> foils;
    std::vector<double> taus;
    for (int i = 0; i < 3; ++i) {
        const double tau = gen.next_uniform(0.05, 0.25);
        foils.emplace_back("f" + std::to_string(i), shape_with_thickness(tau));
        taus.push_back(geometry::thickness(foils.back().second));
    }
    std::vector<PerformanceRecord> recs;
    for (int i = 0; i < 60; ++i) {
        const int which = static_cast<int>(gen.next_below(3));
        recs.push_back(record("f" + std::to_string(which), gen.next_uniform(0.0, 25.0),
                              gen.next_uniform(0.1, 2.0), gen.next_uniform(0.005, 0.02)));
    }

    // independent classifier: per-record bits, dedup via a set
    std::set<std::pair<std::string, std::string>> expected;
    for (const PerformanceRecord& r : recs) {
        const int which = r.airfoil_id[1] - '0';
        std::string bits;
        bits += (r.cl / r.cd > th.clcd) ? '1' : '0';
        bits += (r.alpha > th.alpha) ? '1' : '0';
        bits += (taus[which] > th.tau) ? '1' : '0';
        expected.insert({r.airfoil_id, bits});
    }

    const AssignResult res = assign_classes(foils, recs, th);
    CHECK(res.dataset.entries.size() == expected.size());
    std::set<std::pair<std::string, std::string>> actual;
    for (const Entry& e : res.dataset.entries) {
        actual.insert({e.airfoil_id, e.label.to_string()});
    }
    CHECK(actual == expected);
    CHECK(res.dataset.entries.size() <= 8 * foils.size());
}

TEST_CASE("raising cl/cd never flips the performance bit from high to low") {
    rng::SplitMix64 gen(23);
    const std::vector<std::pair<std::string, geometry::CanonicalAirfoil>> foils = {
        {"a", shape_with_thickness(0.10)}};
    for (int trial = 0; trial < 30; ++trial) {
        PerformanceRecord r = record("a", 5.0, gen.next_uniform(0.5, 2.0),
                                     gen.next_uniform(0.005, 0.02));
        const AssignResult before = assign_classes(foils, {&r, 1}, {});
        r.cl *= gen.next_uniform(1.0, 4.0);  // only ever raises cl/cd
        const AssignResult after = assign_classes(foils, {&r, 1}, {});
        const bool before_high = before.dataset.entries[0].label.perf_high;
        const bool after_high = after.dataset.entries[0].label.perf_high;
        CHECK(before_high <= after_high);
    }
}

TEST_CASE("dataset CSV round trip is exact") {
    rng::SplitMix64 gen(41);
    LabeledDataset d;
    d.thresholds = Thresholds{123.5, 8.25, 0.1};
    const auto classes = ClassLabel::all();
    for (int i = 0; i < 50; ++i) {
        Entry e;
        e.airfoil_id = "foil-" + std::to_string(i);
        e.label = classes[gen.next_below(8)];
        for (double& v : e.shape.y) v = gen.next_uniform(-0.4, 0.4);
        d.entries.push_back(std::move(e));
    }
    // values with awkward decimal expansions must survive exactly
    d.entries[0].shape.y[0] = 1.0 / 3.0;
    d.entries[0].shape.y[1] = 0.1;
    d.entries[0].shape.y[2] = 1e-300;
    d.entries[0].shape.y[3] = 0.0;

    const fs::path path = temp_file("roundtrip.csv");
    save_dataset(d, path);
    const LabeledDataset back = load_dataset(path);
    CHECK(back == d);
}

TEST_CASE("empty dataset round trip") {
    LabeledDataset d;
    const fs::path path = temp_file("empty.csv");
    save_dataset(d, path);
    const LabeledDataset back = load_dataset(path);
    CHECK(back.entries.empty());
    CHECK(back.thresholds == Thresholds{});
}

TEST_CASE("dataset files declare their column layout") {
    const fs::path path = temp_file("short-row.csv");
    std::ofstream out(path);
    out << "airfoil_id,class";
    for (int i = 1; i <= 37; ++i) out << ",y" << i;  // one column short
    out << "\nfoo,000";
    for (int i = 1; i <= 37; ++i) out << ",0.0";
    out << "\n";
    out.close();
    try {
        load_dataset(path);
        FAIL("expected a schema error");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("38") != std::string::npos);
    }
}

TEST_CASE("dataset rows reject malformed numbers") {
    LabeledDataset d;
    Entry e;
    e.airfoil_id = "x";
    d.entries.push_back(e);
    const fs::path path = temp_file("badnum.csv");
    save_dataset(d, path);
    // corrupt one value
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    const auto pos = text.rfind(",0");
    text.replace(pos, 2, ",zz");
    std::ofstream out(path, std::ios::trunc);
    out << text;
    out.close();
    CHECK_THROWS_AS(load_dataset(path), ParseError);
}

TEST_CASE("performance record CSV round trip and header check") {
    std::vector<PerformanceRecord> recs = {record("a", 10.0, 1.5, 0.01),
                                           record("b", 0.25, 0.5, 0.005)};
    recs[0].reynolds = 2.5e6;
    recs[1].mach = 0.3;
    const fs::path path = temp_file("perf.csv");
    save_performance_records(recs, path);
    const std::vector<PerformanceRecord> back = load_performance_records(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].airfoil_id == "a");
    CHECK(back[0].reynolds == 2.5e6);
    CHECK(back[0].alpha == 10.0);
    CHECK(back[0].cl == 1.5);
    CHECK(back[0].cd == 0.01);
    CHECK(back[1].mach == 0.3);

    // header is part of the contract
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "airfoil_id,Re,M,alpha,cl,cd");
    in.close();

    const fs::path bad = temp_file("perf-bad.csv");
    std::ofstream out(bad);
    out << "id,Re,M,alpha,cl,cd\na,1,2,3,4,5\n";
    out.close();
    CHECK_THROWS_AS(load_performance_records(bad), SchemaError);
}

TEST_CASE("dataset CSV header matches the documented layout") {
    LabeledDataset d;
    Entry e;
    e.airfoil_id = "probe";
    d.entries.push_back(e);
    const fs::path path = temp_file("header.csv");
    save_dataset(d, path);
    std::ifstream in(path);
    std::string line1, line2;
    std::getline(in, line1);
    std::getline(in, line2);
    CHECK(line1.rfind("#", 0) == 0);  // metadata comment first
    std::string expected = "airfoil_id,class";
    for (int i = 1; i <= 38; ++i) expected += ",y" + std::to_string(i);
    CHECK(line2 == expected);
}
