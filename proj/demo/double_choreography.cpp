// Solves one sign word, prints the certificate and writes the four projections.
//
//   demo_double_choreography [n] [omega] [nodes]

#include <cstdlib>
#include <iostream>
#include <string>

#include "choreo/choreo.hpp"

int main(int argc, char** argv) {
    using namespace choreo;
    const int n = argc > 1 ? std::atoi(argv[1]) : 4;
    const std::string word = argc > 2 ? argv[2] : "+,-,+";
    const int nodes = argc > 3 ? std::atoi(argv[3]) : 128;
    try {
        const auto omega = OmegaSequence::parse(n, word);
        if (const auto v = validate_omega(omega); !v) {
            std::cerr << v.reason << "\n";
            return 3;
        }
        SolverConfig config;
        config.nodes = nodes;
        const SolveResult r = minimize(n, omega, config);
        std::cout << "status " << to_string(r.status) << ", action " << r.report.action << ", min distance "
                  << r.report.min_pairwise_distance << "\n";

        const FullLoop loop = reconstruct_full_loop(SymmetrySpec(n), *r.arc);
        std::cout << certify(loop, omega).report();
        for (auto p : {Projection::xy, Projection::xz, Projection::yz, Projection::oblique}) {
            PlotOptions opt;
            opt.projection = p;
            opt.title = "n = " + std::to_string(n) + ", omega = " + omega.to_string();
            const std::string path = "choreography_" + std::string(to_string(p)) + ".svg";
            write_svg(path, loop, opt);
            std::cout << "wrote " << path << "\n";
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
