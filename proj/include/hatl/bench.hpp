#pragma once

#include "hatl/engine.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hatl
{

enum class bench_density
{
    sparse,
    dense,
};

[[nodiscard]] std::string_view to_string( bench_density d );

struct bench_spec
{
    std::size_t states = 100;
    std::size_t agents = 3;
    std::size_t actions = 4;
    std::uint64_t k = 2;
    std::uint64_t b = 4;
    bench_density density = bench_density::sparse;
    std::uint64_t seed = 1;
};

// Random model with atoms p0, p1 and guard pool p0>=0.5, p1>=0.5.
// sparse: two targets per (state, a0 action), chosen by the opponents;
// dense: every joint action has its own target (up to the state count).
[[nodiscard]] rfcgs generate_benchmark( const bench_spec& spec );

// <<a0>>[k<=K,b<=B](p0 U p1)
[[nodiscard]] std::string benchmark_formula( const bench_spec& spec );

struct bench_row
{
    bench_spec spec;
    strategy_mode mode = strategy_mode::memoryless;
    double median_ms = 0.0;
    std::vector<double> trial_ms;
    std::size_t candidates = 0;
    bool verdict = false;
};

// Trial t runs on seed + t.
[[nodiscard]] bench_row run_benchmark( const bench_spec& spec, std::size_t trials, const check_config& cfg );

// CSV header and row
[[nodiscard]] std::string bench_header();
[[nodiscard]] std::string to_string( const bench_row& row );

} // namespace hatl
