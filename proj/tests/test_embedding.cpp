#include <random>
#include <vector>

#include "doctest.h"

#include "icad/embedding.hpp"
#include "icad/errors.hpp"
#include "support/builders.hpp"

using icad::embed_series;
using icad::embed_values;
using icad::EmbeddedVector;
using icad::HankelMatrix;

TEST_SUITE("embedding") {

TEST_CASE("five-point series unrolls into four overlapping lag windows") {
    const std::vector<double> values{1, 2, 3, 4, 5};
    const HankelMatrix m = embed_values(values, 2);

    REQUIRE(m.column_count() == 4);
    CHECK(m.window_length() == 2);
    const std::vector<std::vector<double>> expected{{1, 2}, {2, 3}, {3, 4}, {4, 5}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(m.column(i).values[0] == expected[i][0]);
        CHECK(m.column(i).values[1] == expected[i][1]);
        CHECK(m.column(i).end_index == static_cast<std::int64_t>(i) + 1);
    }
}

TEST_CASE("constant series gives identical columns") {
    const std::vector<double> values(7, 3.25);
    const HankelMatrix m = embed_values(values, 3);

    REQUIRE(m.column_count() == 5);
    for (std::size_t i = 0; i < m.column_count(); ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(m.column(i).values[j] == 3.25);
        }
    }
}

TEST_CASE("history of length T+C+L-1 embeds into exactly T+C columns") {
    const int T = 4, C = 3, L = 2;
    std::vector<double> values;
    for (int i = 0; i < T + C + L - 1; ++i) {
        values.push_back(static_cast<double>(i));
    }
    const HankelMatrix m = embed_values(values, L);
    CHECK(m.column_count() == static_cast<std::size_t>(T + C));
    CHECK(m.window_length() == L);
}

TEST_CASE("embedding rejects empty and ill-sized inputs") {
    const std::vector<double> empty;
    CHECK_THROWS_AS(embed_values(empty, 2), icad::EmptySeries);

    const std::vector<double> eight(8, 1.0);
    CHECK_THROWS_AS(embed_values(eight, 1), icad::InvalidWindowLength);
    CHECK_THROWS_AS(embed_values(eight, 4), icad::InvalidWindowLength);
    CHECK_NOTHROW(embed_values(std::vector<double>(9, 1.0), 4));

    const auto series = testutil::indexed_series({1, 2, 3});
    CHECK_THROWS_AS(embed_series(series, 2), icad::InvalidWindowLength);
}

TEST_CASE("matrix construction validates column shape") {
    std::vector<EmbeddedVector> columns = testutil::line_points({1.0, 2.0});
    CHECK_THROWS_AS(HankelMatrix(columns, 1), icad::InvalidWindowLength);
    CHECK_THROWS_AS(HankelMatrix(columns, 2), icad::ShapeMismatch);
}

TEST_CASE("slide drops the oldest window and appends the newest") {
    const std::vector<double> values{1, 2, 3, 4, 5};
    const HankelMatrix m = embed_values(values, 2);
    const HankelMatrix slid = icad::slide(m, {icad::Timestamp::from_index(5), 6.0});

    REQUIRE(slid.column_count() == 4);
    const std::vector<std::vector<double>> expected{{2, 3}, {3, 4}, {4, 5}, {5, 6}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(slid.column(i).values[0] == expected[i][0]);
        CHECK(slid.column(i).values[1] == expected[i][1]);
        CHECK(slid.column(i).end_index == static_cast<std::int64_t>(i) + 2);
    }
}

TEST_CASE("repeated slides reproduce a fresh embedding bit-exactly") {
    std::mt19937_64 rng(101);
    std::normal_distribution<double> gauss;
    std::vector<double> values(40);
    for (double& v : values) {
        v = gauss(rng);
    }
    const int L = 5;
    const std::size_t head = 25;

    HankelMatrix rolling = embed_values({values.data(), head}, L);
    for (std::size_t i = head; i < values.size(); ++i) {
        rolling = icad::slide(
            rolling, {icad::Timestamp::from_index(static_cast<std::int64_t>(i)), values[i]});
    }

    const std::size_t shift = values.size() - head;
    const HankelMatrix fresh = embed_values({values.data() + shift, head}, L,
                                            static_cast<std::int64_t>(shift));
    REQUIRE(rolling.column_count() == fresh.column_count());
    for (std::size_t i = 0; i < fresh.column_count(); ++i) {
        CHECK(rolling.column(i).end_index == fresh.column(i).end_index);
        for (int j = 0; j < L; ++j) {
            CHECK(rolling.column(i).values[j] == fresh.column(i).values[j]);
        }
    }
}

TEST_CASE("slide over a constant series keeps column values unchanged") {
    const std::vector<double> values(9, 2.5);
    const HankelMatrix m = embed_values(values, 3);
    const HankelMatrix slid = icad::slide(m, {icad::Timestamp::from_index(9), 2.5});
    REQUIRE(slid.column_count() == m.column_count());
    for (std::size_t i = 0; i < m.column_count(); ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(slid.column(i).values[j] == m.column(i).values[j]);
        }
    }
}

TEST_CASE("latest_vector returns the most recent lag window") {
    const auto buffer = testutil::indexed_series({1, 2, 3});
    const EmbeddedVector v = icad::latest_vector(buffer, 2);
    CHECK(v.values[0] == 2);
    CHECK(v.values[1] == 3);
    CHECK(v.end_index == 2);

    const EmbeddedVector whole = icad::latest_vector(buffer, 3);
    CHECK(whole.values[0] == 1);
    CHECK(whole.values[2] == 3);

    CHECK_THROWS_AS(icad::latest_vector(buffer, 4), icad::InsufficientHistory);
}

TEST_CASE("latest_vector equals the last column of a fresh embedding") {
    const auto buffer = testutil::indexed_series({1, 2, 3, 4, 5, 6});
    const EmbeddedVector v = icad::latest_vector(buffer, 2);
    const HankelMatrix m = embed_series(buffer, 2);
    const EmbeddedVector& last = m.column(m.column_count() - 1);
    CHECK(v.values[0] == last.values[0]);
    CHECK(v.values[1] == last.values[1]);
    CHECK(v.end_index == last.end_index);
}

TEST_CASE("anti-diagonals are constant") {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> gauss;
    std::vector<double> values(60);
    for (double& v : values) {
        v = gauss(rng);
    }
    const int L = 7;
    const HankelMatrix m = embed_values(values, L);
    for (std::size_t j = 1; j < m.column_count(); ++j) {
        for (int i = 1; i < L; ++i) {
            CHECK(m.column(j).values[i - 1] == m.column(j - 1).values[i]);
        }
    }
}

TEST_CASE("source series is recoverable from the first row plus last column") {
    std::mt19937_64 rng(78);
    std::normal_distribution<double> gauss;
    std::vector<double> values(30);
    for (double& v : values) {
        v = gauss(rng);
    }
    const int L = 4;
    const HankelMatrix m = embed_values(values, L);
    const std::size_t cols = m.column_count();

    std::vector<double> rebuilt;
    for (std::size_t i = 0; i < cols; ++i) {
        rebuilt.push_back(m.column(i).values[0]);
    }
    const EmbeddedVector& last = m.column(cols - 1);
    for (int j = 1; j < L; ++j) {
        rebuilt.push_back(last.values[j]);
    }
    REQUIRE(rebuilt.size() == values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        CHECK(rebuilt[i] == values[i]);
    }
}

} // TEST_SUITE
