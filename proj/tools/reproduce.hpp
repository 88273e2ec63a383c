// reproduce.hpp — datasets behind the waveguide figures

#pragma once

#include <string>
#include <vector>

#include "friedrichs/waveguide.hpp"

namespace friedrichs::cli {

struct ReproduceOptions {
    std::string out_dir = ".";
    AttachmentSite fig3_site = AttachmentSite::at(1);
    bool plot_stub = false;
    unsigned threads = 1;
};

// each returns the list of files written
std::vector<std::string> reproduce_fig3(const ReproduceOptions& options);
std::vector<std::string> reproduce_fig4(const ReproduceOptions& options);
std::vector<std::string> reproduce_fig5(const ReproduceOptions& options);

std::vector<double> time_grid(double t_max, int points);

}  // namespace friedrichs::cli
