#include "skewgeo/datasets.hpp"

#include <stdexcept>
#include <string>

namespace skewgeo {

CountData claims_data() {
    return CountData({{Bin::exact(0), 1563}, {Bin::exact(1), 271}, {Bin::exact(2), 32}, {Bin::exact(3), 7},
                      {Bin::exact(4), 2}});
}

CountData ticks_data() {
    // the source prints the second grouped row as "11,12,13,1,4"; read as 11-14
    return CountData({{Bin::exact(0), 4},
                      {Bin::exact(1), 5},
                      {Bin::exact(2), 11},
                      {Bin::exact(3), 10},
                      {Bin::exact(4), 9},
                      {Bin::exact(5), 11},
                      {Bin::exact(6), 3},
                      {Bin::exact(7), 5},
                      {Bin::range(8, 10), 7},
                      {Bin::range(11, 14), 9},
                      {Bin::tail(15), 8}});
}

CountData dataset_by_name(std::string_view name) {
    if (name == "claims") return claims_data();
    if (name == "ticks") return ticks_data();
    throw std::invalid_argument("unknown dataset '" + std::string(name) + "' (expected claims|ticks)");
}

}  // namespace skewgeo
