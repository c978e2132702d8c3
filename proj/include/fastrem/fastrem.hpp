// Umbrella header.

#ifndef FASTREM_FASTREM_HPP
#define FASTREM_FASTREM_HPP

#include "fastrem/width.hpp"
#include "fastrem/core_unsigned.hpp"
#include "fastrem/core_signed.hpp"
#include "fastrem/magic.hpp"
#include "fastrem/baseline.hpp"
#include "fastrem/verify.hpp"
#include "fastrem/bench.hpp"

#endif  // FASTREM_FASTREM_HPP
