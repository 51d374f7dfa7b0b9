#include "lqfa/event_csv.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace lqfa {

std::string format_event_csv(const EventTable &t) {
    std::string out = "k,probability\n";
    char buf[64];
    for (const auto &[k, p] : t.probabilities) {
        const double clamped = std::clamp(p, 0.0, 1.0);
        std::snprintf(buf, sizeof(buf), "%zu,%.12g\n", k, clamped);
        out += buf;
    }
    return out;
}

EventTable parse_event_csv(const std::string &csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "k,probability")
        throw std::invalid_argument("event csv: missing header");
    EventTable t;
    std::size_t expect = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("event csv: malformed row '" + line + "'");
        std::size_t k = 0;
        double p = 0.0;
        try {
            k = std::stoul(line.substr(0, comma));
            p = std::stod(line.substr(comma + 1));
        } catch (const std::exception &) {
            throw std::invalid_argument("event csv: malformed row '" + line + "'");
        }
        if (k != expect++)
            throw std::invalid_argument("event csv: lengths not contiguous from 0");
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("event csv: probability out of range");
        t.probabilities.emplace_back(k, p);
    }
    return t;
}

} // namespace lqfa
