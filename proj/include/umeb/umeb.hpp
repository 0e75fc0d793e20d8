#pragma once

#include "umeb/error.hpp"
#include "umeb/linalg.hpp"
#include "umeb/state.hpp"
#include "umeb/constructions.hpp"
#include "umeb/fixtures.hpp"
#include "umeb/verification.hpp"
#include "umeb/document.hpp"
