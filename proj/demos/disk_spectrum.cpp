// Steklov spectrum of the unit disk next to the exact values 0, 1, 1, 2, 2, ...
#include "steklov/generators.hpp"
#include "steklov/solver.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
    const int refinement = argc > 1 ? std::atoi(argv[1]) : 4;
    const int count = argc > 2 ? std::atoi(argv[2]) : 11;

    const auto start = std::chrono::steady_clock::now();
    const auto mesh = steklov::make_disk(1.0, refinement);
    const auto spectrum = steklov::steklov_spectrum(mesh, steklov::BoundaryDensity::constant(mesh), count);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::printf("disk refinement %d: %d vertices, %zu boundary vertices, %.2fs\n", refinement,
                mesh.vertex_count(), mesh.boundary_vertices().size(), secs);
    for (int j = 0; j < spectrum.size(); ++j) {
        const double exact = (j + 1) / 2;
        std::printf("  sigma_%-3d %.8f  exact %g\n", j, spectrum.eigenvalues[j], exact);
    }
}
