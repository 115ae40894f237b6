#include "floatctl/detail/closure.hpp"

namespace floatctl::detail {

const double kZetaWeights[kZoneRows] = {
    0.79942365711687191, 0.34357783165667605, 0.78524002369172963,
    1.4635763678159694,  1.5956975810817975,  0.51248453863695598};

const double kQWeights[kZoneCols] = {
    2.3181692641103773,  0.5997418480415404, 0.39055204524316556,
    0.92320013491765929, 1.242129881717174,  1.0262068259700894};

const double kTrace[kZoneRows] = {
    1.0012871791505209,    0.16844125719454131,  -0.14834088299767251,
    -0.078496685679388348, -0.078184904178975112, 0.1352940365109736};

const double kRows[kZoneRows][kStencil] = {
    {-1.0987662987892117, 0.058247843497429917, 0.012768833033996603,
     -0.022608145309474973, 0.059450493687042354, -0.010379905270303684},
    {0.091801649399696039, -0.38228894349336151, 0.11855771389695467,
     0.039525409809270072, -0.031646145845010014, -0.0043909409620905915},
    {0.67767715073511481, -0.06865600086956504, -0.46909661855038248,
     0.015907681403535275, -0.063001935675471354, 0.055510605954441475},
    {0.29022921490227033, 0.41786860849070984, -0.017572825935300924,
     -0.52039411743031139, -0.094557313915366467, 0.0029231195673868463},
    {0.19496575022701285, 0.0084054940720325981, 0.51380844152078242,
     0.024804143042652178, -0.53467733191519851, -0.12912159276830643},
    {-0.15590746647488232, -0.03357700169724584, -0.15846554396605039,
     0.4627650284843286, 0.16443223366400397, -0.41454128652112765}};

} // namespace floatctl::detail
