#pragma once

#include "parry/attractors.hpp"
#include "parry/errors.hpp"
#include "parry/numeration.hpp"
#include "parry/params.hpp"
#include "parry/prefix_engine.hpp"
#include "parry/verifier.hpp"
#include "parry/word.hpp"
