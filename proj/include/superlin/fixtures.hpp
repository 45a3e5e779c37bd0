#ifndef SUPERLIN_FIXTURES_HPP
#define SUPERLIN_FIXTURES_HPP

#include <string>
#include <vector>

namespace superlin {

// A bundled input file: the worked systems and the showcase lift, exactly
// as they are shipped under fixtures/. The demo command prints these bytes.
struct Fixture {
    std::string name;     // demo argument, e.g. "example2"
    std::string filename; // suggested on-disk name, e.g. "example2.sys"
    std::string contents;
};

const std::vector<Fixture>& bundled_fixtures();

// nullptr when no fixture has that name.
const Fixture* find_fixture(const std::string& name);

} // namespace superlin

#endif
