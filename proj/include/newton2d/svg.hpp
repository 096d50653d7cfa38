#pragma once

#include <string>

#include "newton2d/geometry.hpp"

namespace newton2d {

/// SVG 1.1 drawing of the body: the profile on [0, r], its mirror image on
/// [-r, 0], and the coordinate axes. Uniform scale in x and y.
std::string render_profile_svg(const Profile& profile, int width = 800,
                               int height = 600);

}  // namespace newton2d
