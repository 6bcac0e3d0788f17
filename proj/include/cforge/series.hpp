#ifndef CFORGE_SERIES_HPP
#define CFORGE_SERIES_HPP

#include <cforge/series/coordinate_change.hpp>
#include <cforge/series/jet1.hpp>
#include <cforge/series/jet2.hpp>
#include <cforge/series/scalar.hpp>
#include <cforge/series/vec3.hpp>

#endif
