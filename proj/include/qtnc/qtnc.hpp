#pragma once

#include "qtnc/errors.hpp"
#include "qtnc/nset.hpp"
#include "qtnc/kernel.hpp"
#include "qtnc/vobj.hpp"
#include "qtnc/serialize.hpp"
#include "qtnc/universe.hpp"
#include "qtnc/harness.hpp"
#include "qtnc/univalence.hpp"
#include "qtnc/version.hpp"
