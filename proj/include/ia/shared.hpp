#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ia/channel.hpp"

namespace ia {

// One basis vector shared by a subset of transmitters. Slots are 1-based,
// transmitter indices 0-based.
struct SharedVector {
    std::string id;
    std::vector<int> members;  // the subset it was assigned to
    std::vector<int> active;   // transmitters still sending it
    std::vector<int> support;  // slots it may be nonzero on
    Vector values;             // length n, zero off support
    bool dropped = false;
    bool random = false;       // private fill vector, not subject to sharing rules
    std::string note;          // why dropped / trimmed, for reports
};

struct SharedPatternScheme {
    int K = 0;
    int r = 0;
    int n = 0;
    std::vector<ChangingPattern> rx_patterns;  // one per receiver
    std::vector<SharedVector> vectors;
    std::vector<Matrix> precoders;
    std::vector<std::vector<std::string>> precoder_ids;  // column labels per TX
};

struct Assignment {
    std::string id;
    std::vector<int> members;  // 0-based transmitters
};

// Receiver patterns from a K x K pattern array; throws unless every row
// is uniform (all channels into a receiver share one pattern).
std::vector<ChangingPattern> receiver_patterns(const NetworkConfig& cfg);

// Lexicographic r-subsets, ids v1, v2, ...
std::vector<Assignment> all_r_subsets(int K, int r);

SharedPatternScheme construct_shared(int K, int r, const std::vector<ChangingPattern>& rx_patterns,
                                     int n, std::uint64_t seed);
SharedPatternScheme construct_with(int K, int r, const std::vector<ChangingPattern>& rx_patterns,
                                   int n, const std::vector<Assignment>& assignment,
                                   std::uint64_t seed);

// Pairs named as in the worked four-user example: a{1,2} b{2,3} c{3,4}
// d{1,3} e{2,4} f{1,4}.
SharedPatternScheme construct_example2(const std::vector<ChangingPattern>& rx_patterns, int n,
                                       std::uint64_t seed);

// The four literal ten-slot triple-shared vectors:
// a = 1 on {1..4} for TX{1,2,3}, b = {5..8} TX{2,3,4}, c = {3..6} TX{1,2,4},
// d = {7..10} TX{1,3,4}.
SharedPatternScheme construct_example3(const std::vector<ChangingPattern>& rx_patterns, int n);

// True iff every active vector is zero outside its support.
bool supports_respected(const SharedPatternScheme& s);
// True iff every shared support lies inside one block of each non-member receiver.
bool supports_legal(const SharedPatternScheme& s);

}  // namespace ia
