#include "pcrkit/fixtures.hpp"

#include "pcrkit/errors.hpp"

namespace pcrkit::fixtures {

const std::vector<std::string>& fig3_names() {
    static const std::vector<std::string> names = {"IY", "REI", "PDS", "PDC", "IR",
                                                   "GVA", "CPI", "PD", "GDHI"};
    return names;
}

Matrix fig3_printed() {
    // clang-format off
    static const double lower[9][9] = {
        { 1.00},
        { 0.94,  1.00},
        {-0.43, -0.56,  1.00},
        {-0.18, -0.26,  0.76,  1.00},
        {-0.88, -0.84,  0.64,  0.55,  1.00},
        { 0.99,  0.93, -0.50, -0.28, -0.91,  1.00},
        { 0.25,  0.08, -0.34, -0.50, -0.46,  0.33,  1.00},
        { 0.98,  0.95, -0.57, -0.30, -0.91,  0.99,  0.30,  1.00},
        { 0.99,  0.94, -0.53, -0.30, -0.92,  0.99,  0.30,  1.00,  1.00},
    };
    // clang-format on
    Matrix m(9, 9);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = lower[i][j];
    return m;
}

CorrelationMatrix fig3_correlation() { return CorrelationMatrix(fig3_names(), fig3_printed()); }

CorrelationRepair fig3_repaired() { return nearest_correlation(fig3_correlation()); }

CorrelationMatrix by_name(const std::string& name) {
    if (name == "fig3") return fig3_correlation();
    throw ConfigError("unknown fixture '" + name + "'");
}

} // namespace pcrkit::fixtures
