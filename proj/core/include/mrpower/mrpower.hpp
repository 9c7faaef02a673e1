#pragma once

#include "mrpower/errors.hpp"
#include "mrpower/generators.hpp"
#include "mrpower/io.hpp"
#include "mrpower/matcore.hpp"
#include "mrpower/powers.hpp"
#include "mrpower/qobjects.hpp"
#include "mrpower/resources.hpp"
#include "mrpower/verify.hpp"
