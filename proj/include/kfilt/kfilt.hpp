#ifndef KFILT_KFILT_HPP
#define KFILT_KFILT_HPP

#include "kfilt/appendix.hpp"
#include "kfilt/commands.hpp"
#include "kfilt/filtration.hpp"
#include "kfilt/invariants.hpp"
#include "kfilt/specialize.hpp"

#endif
