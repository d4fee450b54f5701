#pragma once

#include "cayley/ball.hpp"
#include "cayley/certificates.hpp"
#include "cayley/core.hpp"
#include "cayley/genset.hpp"
#include "cayley/geodesics.hpp"
#include "cayley/graphs.hpp"
#include "cayley/group.hpp"
#include "cayley/io.hpp"
#include "cayley/isomorphism.hpp"
#include "cayley/lines.hpp"
#include "cayley/rigidity.hpp"
#include "cayley/smith.hpp"
