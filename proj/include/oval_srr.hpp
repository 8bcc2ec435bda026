#pragma once

#include "oval_srr/caps.hpp"
#include "oval_srr/construct.hpp"
#include "oval_srr/errors.hpp"
#include "oval_srr/geom.hpp"
#include "oval_srr/gf.hpp"
#include "oval_srr/io.hpp"
#include "oval_srr/lp.hpp"
#include "oval_srr/matrix.hpp"
#include "oval_srr/mld.hpp"
#include "oval_srr/oval.hpp"
#include "oval_srr/rational.hpp"
#include "oval_srr/srr.hpp"
