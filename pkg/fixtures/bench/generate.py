"""Deterministic generator for the benchmark fixtures.

Writes corpus.jsonl, queries.jsonl and script.jsonl next to itself. The
corpus plants the classic retrieval failure modes - seasonal inversion,
product-vs-validation confusion, geographic drift, and raw-input-vs-derived
-product intent misses - so the three architectures separate cleanly under
the oracle judge:

  - keyword baseline falls for literal-token decoys;
  - the single-pass tier inherits round-1 constraint mistakes (it never
    introspects), so hard queries stay wrong;
  - the iterative tier repairs those constraints through the scripted
    adequacy verdicts and retrieves the annotated relevant sets.

Run: python3 fixtures/bench/generate.py
"""

from __future__ import annotations

import json
from pathlib import Path

HERE = Path(__file__).parent

# --- record helpers -------------------------------------------------------


def rec(rid, title, *, abstract=None, params=(), campaign=None, platform=None,
        geo=None, time=None, depth=None, layout="tabular", size=10_000_000):
    doc = {"id": rid, "title": title, "layout": layout, "size_bytes": size}
    if abstract:
        doc["abstract"] = abstract
    if params:
        doc["parameters"] = [{"name": p, "unit": ""} for p in params]
    if campaign:
        doc["campaign"] = campaign
    if platform:
        doc["platform"] = platform
    if geo:
        doc["geo"] = {"lat_min": geo[0], "lat_max": geo[1],
                      "lon_min": geo[2], "lon_max": geo[3]}
    if time:
        doc["time"] = {"start": f"{time[0]}T00:00:00+00:00", "end": f"{time[1]}T00:00:00+00:00"}
    if depth:
        doc["depth"] = {"min_m": depth[0], "max_m": depth[1]}
    return doc


WEDDELL = (-78.0, -60.0, -57.0, 12.0)
FRAM = (78.0, 80.0, 3.0, 6.0)
NORTH_ATLANTIC = (58.0, 70.0, -47.0, 6.0)
ARCTIC_OCEAN = (69.0, 87.0, 15.0, 140.0)
ANTARCTICA = (-90.0, -60.0, -180.0, 180.0)
ALPS = (45.5, 47.5, 6.0, 13.0)
MED = (34.0, 44.0, -5.0, 36.0)
YUKON = (68.0, 70.5, -141.0, -133.0)
SOUTHERN_OCEAN = (-78.0, -50.0, -180.0, 180.0)

QUERIES = []

# --- category 1: specific entity -----------------------------------------

for n, (key, topic, campaign, region) in enumerate([
    ("Q01", "microplastic surface concentrations", "PS-9117", WEDDELL),
    ("Q02", "sediment core geochemistry", "MSM-4402", NORTH_ATLANTIC),
    ("Q03", "zooplankton net hauls", "PS-8806", ARCTIC_OCEAN),
    ("Q04", "ice core conductivity profiles", "EGRIP-77", (72.0, 80.0, -45.0, -20.0)),
], start=1):
    topic_kw = topic.split()[0]
    relevant = [
        rec(f"10.1594/BENCH.{key}R{i}",
            f"{campaign} {topic}, part {i}",
            abstract=f"Records of {topic} archived from campaign {campaign}.",
            params=[topic.split()[0], "event label"],
            campaign=campaign, geo=region, time=("2016-01-05", "2016-03-20"))
        for i in range(1, 6)
    ]
    near = campaign.replace("7", "8").replace("4", "5").replace("0", "1")
    decoys = [
        rec(f"10.1594/BENCH.{key}X{i}",
            f"{near} {topic}, part {i}",
            abstract=f"Companion campaign {near} collection of {topic}.",
            params=[topic.split()[0]],
            campaign=near, geo=region, time=("2012-01-05", "2012-03-20"))
        for i in range(1, 3)
    ]
    QUERIES.append({
        "qid": key, "category": 1,
        "text": f"Retrieve the {campaign} {topic} collection",
        "relevant": relevant, "decoys": decoys,
        "required_parameters": [topic_kw],
        "constraints": {
            "facets": [
                {"name": f"{key.lower()}-campaign", "synonyms": [campaign]},
                {"name": f"{key.lower()}-topic", "synonyms": [topic, topic_kw]},
            ],
            "required_parameters": [topic_kw],
            "notes": [f"campaign identifier {campaign} recognized"],
        },
        "refine": None,
    })

# --- category 2: broad thematic ------------------------------------------

BROAD = [
    ("Q05", "Plastic debris pollution observations in polar surface waters",
     "microplastic", "microplastic particle concentrations", "plastic debris load",
     ["microplastic"], ARCTIC_OCEAN,
     [("Aerosol pollution optical depth climatology", "Atmospheric pollution record "
       "with debris transport notes", ()),
      ("Beach debris litter survey Mediterranean coasts", "Observations of plastic "
       "pollution and debris on temperate beaches", ("litter count",))]),
    ("Q06", "Sea ice thickness observations across the central Arctic",
     "ice draft", "upward looking sonar ice draft series", "airborne EM ice thickness",
     ["ice thickness"], (80.0, 90.0, -180.0, 180.0),
     [("Central warehouse thickness gauging of steel plates", "Industrial thickness "
       "observations archive", ()),
      ("Arctic shipping route traffic statistics", "Observations across the central "
       "Arctic of vessel movements", ())]),
    ("Q07", "Ocean acidification carbonate chemistry measurements in the Southern Ocean",
     "carbonate system", "total alkalinity and dissolved inorganic carbon",
     "pH on total scale", ["alkalinity"], SOUTHERN_OCEAN,
     [("Acidification of freshwater lakes in boreal catchments", "Carbonate chemistry "
       "measurements of lake water", ("lake ph",)),
      ("Southern Ocean phytoplankton pigment concentrations", "Pigment measurements in "
       "the Southern Ocean", ("chlorophyll a",))]),
    ("Q08", "Permafrost ground temperature monitoring in Siberian lowlands",
     "borehole temperature", "permafrost borehole thermistor chains",
     "active layer thickness", ["ground temperature"], (60.0, 73.0, 60.0, 140.0),
     [("Ground temperature of greenhouse soils, agricultural monitoring",
       "Temperature monitoring of managed ground plots", ("soil temperature",)),
      ("Siberian river discharge gauging stations", "Monitoring records from Siberian "
       "lowlands hydrology", ("discharge",))]),
]

for key, text, syn_a, title_a, title_b, params, region, decoy_specs in BROAD:
    relevant = []
    for i in range(1, 6):
        title = f"{title_a}, station network {i}" if i <= 3 else f"{title_b}, survey {i}"
        relevant.append(rec(
            f"10.1594/BENCH.{key}R{i}", title,
            abstract=f"Quality-controlled {syn_a} observations.",
            params=list(params) + ["event label"],
            geo=region, time=("2014-06-01", "2019-09-30"),
        ))
    decoys = [
        rec(f"10.1594/BENCH.{key}X{i}", dt, abstract=da, params=list(dp),
            geo=MED if region[0] > 0 else ALPS, time=("2014-06-01", "2019-09-30"))
        for i, (dt, da, dp) in enumerate(decoy_specs, start=1)
    ]
    QUERIES.append({
        "qid": key, "category": 2, "text": text,
        "relevant": relevant, "decoys": decoys,
        "geo": region, "required_parameters": params,
        "constraints": {
            "facets": [{"name": f"{key.lower()}-theme",
                        "synonyms": [title_a.split(",")[0], title_b, syn_a]}],
            "geo": {"lat_min": region[0], "lat_max": region[1],
                    "lon_min": region[2], "lon_max": region[3]},
            "required_parameters": params,
            "notes": ["theme expanded to domain vocabulary"],
        },
        "refine": None,
    })

# --- category 3: spatiotemporal slicing -----------------------------------

# Q09: seasonal inversion. Round-1/simple constraints carry the naive
# northern-winter window; the verdict flips it to austral winter.
q09_relevant = [
    rec(f"10.1594/BENCH.Q09R{i}",
        f"ANT-XXIX/6 CTD conductivity temperature depth profiles, station {i}",
        abstract="Full-depth hydrographic profiles from the austral cold season cruise.",
        params=["salinity", "temperature", "pressure"],
        campaign="ANT-XXIX/6", geo=WEDDELL, time=("2013-06-08", "2013-08-12"),
        depth=(0, 4500))
    for i in range(1, 6)
]
q09_decoys = [
    rec("10.1594/BENCH.Q09X1", "IceBird Winter 2019 airborne sea ice altimetry",
        abstract="Winter airborne laser scanner freeboard heights.",
        params=["freeboard"], geo=WEDDELL, time=("2019-07-01", "2019-08-15")),
    rec("10.1594/BENCH.Q09X2", "IceBird Winter 2023 airborne sea ice altimetry",
        abstract="Winter airborne campaign repeat.", params=["freeboard"],
        geo=WEDDELL, time=("2023-07-01", "2023-08-15")),
    rec("10.1594/BENCH.Q09X3", "PS82 CTD profiles Weddell Sea shelf survey",
        abstract="Summer season hydrography.", params=["salinity", "temperature"],
        geo=WEDDELL, time=("2013-12-20", "2014-03-01"), depth=(0, 900)),
    rec("10.1594/BENCH.Q09X4", "ANT-XXIX/2 CTD profiles Weddell Sea",
        abstract="Early-cruise hydrography, warm season.",
        params=["salinity", "temperature"],
        geo=WEDDELL, time=("2012-12-01", "2013-01-18"), depth=(0, 3000)),
]
QUERIES.append({
    "qid": "Q09", "category": 3,
    "text": "Salinity and temperature profiles from the Weddell Sea during winter 2013",
    "relevant": q09_relevant, "decoys": q09_decoys,
    "geo": WEDDELL, "time": ("2013-06-01", "2013-09-30"),
    "required_parameters": ["salinity"],
    "constraints": {
        "facets": [{"name": "q09-instrument", "synonyms": ["ctd", "profiles"]}],
        "geo": {"lat_min": WEDDELL[0], "lat_max": WEDDELL[1],
                "lon_min": WEDDELL[2], "lon_max": WEDDELL[3]},
        "time": {"start": "2013-12-01T00:00:00+00:00", "end": "2014-02-28T00:00:00+00:00"},
        "required_parameters": ["salinity"],
        "notes": ["winter interpreted as December-February"],
    },
    "refine": {
        "missing": ["southern-hemisphere winter window"],
        "refinements": [{"action": "set_time", "start": "2013-06-01T00:00:00+00:00",
                         "end": "2013-09-30T00:00:00+00:00"}],
    },
})

# Q10-Q12: straightforward spatiotemporal queries (one-pass translation is
# already correct; only the keyword tier drifts to literal-token decoys).
SPATIO = [
    ("Q10", "Mooring temperature records from the Fram Strait between 2006 and 2012",
     "HAUSGARTEN observatory thermistor series", "deep ocean temperature logger",
     ["temperature"], FRAM, ("2006-09-01", "2012-07-31"),
     [("Fram Strait bathymetry multibeam survey 1984", "Historic depth soundings near "
       "the Fram Strait sill", ("depth",), FRAM, ("1984-06-01", "1984-08-01")),
      ("Fram expedition 1893 meteorological diary temperature records",
       "Historic ship log temperature records", ("air temperature",),
       (83.0, 86.0, 40.0, 120.0), ("1893-09-01", "1896-08-01"))]),
    ("Q11", "Jellyfish abundance observations from the North Atlantic in May 2013",
     "Gelatinous macrozooplankton net catches G.O. Sars transect",
     "hydromedusae counts subpolar section",
     ["abundance"], NORTH_ATLANTIC, ("2013-05-01", "2013-05-31"),
     [("Jellyfish bloom newspaper reports Mediterranean summer 2013",
       "Compiled abundance observations of jellyfish strandings", (),
       MED, ("2013-07-01", "2013-08-31")),
      ("North Atlantic hurricane track positions May 2013", "Storm observations "
       "North Atlantic", ("wind speed",), (10.0, 45.0, -80.0, -20.0),
       ("2013-05-01", "2013-05-31"))]),
    ("Q12", "Shipboard meteorology along the Arctic drift track in autumn 2019",
     "PS122/1 underway meteorological observations", "drifting station weather log",
     ["air temperature", "wind speed"], ARCTIC_OCEAN, ("2019-09-20", "2019-12-13"),
     [("Arctic drift buoy network positions 2007", "Autumn drift trajectories",
       ("position",), ARCTIC_OCEAN, ("2007-09-01", "2007-12-01")),
      ("Autumn 2019 alpine weather station meteorology", "Shipboard-style meteorology "
       "from a mountain observatory", ("air temperature",), ALPS,
       ("2019-09-01", "2019-11-30"))]),
]

for key, text, title_a, title_b, params, region, window, decoy_specs in SPATIO:
    relevant = []
    for i in range(1, 6):
        title = f"{title_a}, deployment {i}" if i <= 3 else f"{title_b}, unit {i}"
        relevant.append(rec(
            f"10.1594/BENCH.{key}R{i}", title,
            abstract="Calibrated instrument records.",
            params=list(params) + ["event label"], geo=region, time=window,
            depth=(80, 2700) if key == "Q10" else None,
        ))
    decoys = [
        rec(f"10.1594/BENCH.{key}X{i}", dt, abstract=da, params=list(dp), geo=dg, time=dw)
        for i, (dt, da, dp, dg, dw) in enumerate(decoy_specs, start=1)
    ]
    QUERIES.append({
        "qid": key, "category": 3, "text": text,
        "relevant": relevant, "decoys": decoys,
        "geo": region, "time": window, "required_parameters": params[:1],
        "constraints": {
            "facets": [{"name": f"{key.lower()}-theme",
                        "synonyms": [title_a.split(",")[0], title_b]}],
            "geo": {"lat_min": region[0], "lat_max": region[1],
                    "lon_min": region[2], "lon_max": region[3]},
            "time": {"start": f"{window[0]}T00:00:00+00:00",
                     "end": f"{window[1]}T00:00:00+00:00"},
            "required_parameters": params[:1],
            "notes": ["place name resolved to coordinate box"],
        },
        "refine": None,
    })

# --- category 4: parameter-specific ---------------------------------------

PARAM = [
    ("Q13", "Datasets containing dissolved oxygen concentration profiles from the "
            "Southern Ocean",
     "dissolved oxygen", "Water column dissolved oxygen measurements",
     "O2 concentration full-depth profiles", ["oxygen"], SOUTHERN_OCEAN,
     [("Oxygen isotope ratios in foraminifera shells", "delta-18O record for "
       "paleотемperature", ("delta 18o",)),
      ("Dissolved organic carbon profiles subtropical gyre", "DOC concentration "
       "profiles", ("dissolved organic carbon",))]),
    ("Q14", "Chlorophyll-a fluorescence measurements in the upper ocean",
     "chlorophyll a", "Chlorophyll a fluorometer calibration casts",
     "phytoplankton pigment fluorescence series", ["chlorophyll a"],
     (-60.0, 60.0, -180.0, 180.0),
     [("Fluorescence microscopy of sediment thin sections", "Upper core section "
       "fluorescence measurements", ("grain size",)),
      ("Chlorophyll content of greenhouse lettuce leaves", "Agricultural pigment "
       "measurements", ("leaf chlorophyll",))]),
    ("Q15", "Nutrient concentrations, nitrate and phosphate, in upwelling regions",
     "nitrate", "Inorganic nutrient concentrations nitrate phosphate silicate",
     "macronutrient bottle samples", ["nitrate", "phosphate"],
     (-30.0, 30.0, -130.0, 20.0),
     [("Agricultural nitrate runoff in river catchments", "Nutrient concentrations in "
       "drainage channels", ("nitrate runoff",)),
      ("Upwelling radiance satellite swaths", "Regions of coastal upwelling mapped by "
       "radiometer", ("radiance",))]),
    ("Q16", "Underway surface partial pressure of CO2 measurements",
     "pco2", "Underway surface pCO2 system records", "surface ocean CO2 fugacity",
     ["pco2"], (-70.0, 70.0, -180.0, 180.0),
     [("Soil CO2 efflux chamber measurements", "Surface CO2 measurements over "
       "grassland plots", ("soil co2 flux",)),
      ("Underway bathymetry centerbeam depths", "Continuous underway measurements",
       ("depth",))]),
]

for key, text, syn_a, title_a, title_b, params, region, decoy_specs in PARAM:
    relevant = []
    for i in range(1, 6):
        title = f"{title_a}, cruise leg {i}" if i <= 2 else f"{title_b}, section {i}"
        relevant.append(rec(
            f"10.1594/BENCH.{key}R{i}", title,
            abstract=f"Bottle-calibrated {syn_a} data.",
            params=list(params) + ["event label"], geo=region,
            time=("2010-01-01", "2020-12-31"),
        ))
    decoys = [
        rec(f"10.1594/BENCH.{key}X{i}", dt, abstract=da, params=list(dp))
        for i, (dt, da, dp) in enumerate(decoy_specs, start=1)
    ]
    QUERIES.append({
        "qid": key, "category": 4, "text": text,
        "relevant": relevant, "decoys": decoys,
        "required_parameters": params,
        "constraints": {
            "facets": [{"name": f"{key.lower()}-parameter",
                        "synonyms": [title_a.split(",")[0], title_b, syn_a]}],
            "required_parameters": params,
            "notes": ["parameter synonyms expanded"],
        },
        "refine": None,
    })

# --- category 5: cross-domain constraints ----------------------------------

# Q17: product-vs-validation confusion. Round-1 facet leads with the literal
# "sea level" phrase, so the single query lands on the in-situ decoys whose
# abstracts mention validating altimeters; the verdict requires the gridded
# layout and the height-anomaly vocabulary.
q17_relevant = [
    rec(f"10.1594/BENCH.Q17R{i}",
        f"Gridded sea surface height anomaly fields, mission series {i}",
        abstract="Level-4 gridded anomaly product from radar altimeter missions.",
        params=["sea surface height"], layout="gridded",
        geo=(-70.0, 70.0, -180.0, 180.0), time=("1993-01-01", "2020-12-31"),
        size=6 * 2**30)
    for i in range(1, 6)
]
q17_decoys = [
    rec(f"10.1594/BENCH.Q17X{i}",
        f"Bottom pressure mooring sea level record, site {i}",
        abstract="In-situ sea level time series used to validate satellite altimetry "
                 "missions.",
        params=["bottom pressure"], geo=(50.0 + i, 52.0 + i, -30.0, -20.0),
        time=("2002-01-01", "2012-12-31"))
    for i in range(1, 5)
]
QUERIES.append({
    "qid": "Q17", "category": 5,
    "text": "Satellite altimetry data for studying sea level variability",
    "relevant": q17_relevant, "decoys": q17_decoys,
    "required_parameters": ["sea surface height"],
    "constraints": {
        "facets": [{"name": "q17-theme", "synonyms": ["sea level", "altimetry"]}],
        "notes": ["single-pass translation, no product-level distinction"],
    },
    "refine": {
        "missing": ["gridded product-level intent"],
        "refinements": [
            {"action": "add_synonyms", "name": "q17-theme",
             "synonyms": ["sea surface height anomaly", "gridded sea surface height"]},
            {"action": "require_layout", "layout": "gridded"},
            {"action": "require_parameter", "name": "sea surface height"},
        ],
    },
})

# Q18: geographic drift. Round 1 lacks the polar geographic constraint.
q18_relevant = [
    rec(f"10.1594/BENCH.Q18R{i}",
        f"Radio-echo sounding ice thickness transects, outlet glacier {i}",
        abstract="Airborne radar sounding of polar ice.",
        params=["ice thickness", "surface elevation"], geo=ANTARCTICA,
        time=("2008-11-01", "2017-01-31"))
    for i in range(1, 6)
]
q18_decoys = [
    rec(f"10.1594/BENCH.Q18X{i}",
        f"Ground-penetrating radar survey of alpine glacier tongue {i}",
        abstract="GPR profiles over temperate glacier ice.",
        params=["ice thickness"], geo=ALPS, time=("2015-07-01", "2016-08-31"))
    for i in range(1, 5)
]
QUERIES.append({
    "qid": "Q18", "category": 5,
    "text": "Ground-penetrating radar surveys of Antarctic glaciers",
    "relevant": q18_relevant, "decoys": q18_decoys,
    "geo": ANTARCTICA, "required_parameters": ["ice thickness"],
    "constraints": {
        "facets": [{"name": "q18-instrument",
                    "synonyms": ["ground penetrating radar", "gpr"]},
                   {"name": "q18-target", "synonyms": ["glacier", "ice"]}],
        "notes": ["instrument recognized, geographic scope not constrained"],
    },
    "refine": {
        "missing": ["polar geographic constraint"],
        "refinements": [
            {"action": "set_geo", "box": {"lat_min": -90.0, "lat_max": -60.0,
                                          "lon_min": -180.0, "lon_max": 180.0}},
            {"action": "add_synonyms", "name": "q18-instrument",
             "synonyms": ["radio echo sounding"]},
        ],
    },
})

# Q19: intent miss. Round 1 targets the input imagery instead of the derived
# rates; the verdict re-aims at the product vocabulary.
q19_relevant = [
    rec(f"10.1594/BENCH.Q19R{i}",
        f"Shoreline retreat rates from multitemporal imagery, coastal segment {i}",
        abstract="Derived coastal erosion rate product.",
        params=["erosion rate", "shoreline position"],
        geo=YUKON, time=("1952-01-01", "2020-12-31"))
    for i in range(1, 6)
]
q19_decoys = [
    rec(f"10.1594/BENCH.Q19X{i}",
        f"Historical aerial photographs of the coast, flight line {i}",
        abstract="Scanned aerial photographs and LiDAR point clouds.",
        params=[], geo=YUKON, time=("1952-01-01", "1972-12-31"))
    for i in range(1, 5)
]
QUERIES.append({
    "qid": "Q19", "category": 5,
    "text": "Coastal erosion rates from historical aerial photographs and LiDAR",
    "relevant": q19_relevant, "decoys": q19_decoys,
    "required_parameters": ["erosion rate"],
    "constraints": {
        "facets": [{"name": "q19-source",
                    "synonyms": ["aerial photographs", "lidar"]},
                   {"name": "q19-place", "synonyms": ["coast", "coastal"]}],
        "notes": ["single-pass translation follows the input data wording"],
    },
    "refine": {
        "missing": ["derived product intent (rates, not imagery)"],
        "refinements": [
            {"action": "drop_facet", "name": "q19-source"},
            {"action": "add_facet", "name": "q19-product",
             "synonyms": ["erosion rates", "shoreline retreat"]},
            {"action": "require_parameter", "name": "erosion rate"},
        ],
    },
})

# Q20: combined bio-physical constraints; round 1 misses the geographic box.
q20_relevant = [
    rec(f"10.1594/BENCH.Q20R{i}",
        f"Gelatinous zooplankton abundance with CTD temperature and salinity, "
        f"station group {i}",
        abstract="Joint biological and hydrographic sampling.",
        params=["abundance", "temperature", "salinity"],
        geo=NORTH_ATLANTIC, time=("2013-05-01", "2013-05-31"))
    for i in range(1, 6)
]
q20_decoys = [
    rec(f"10.1594/BENCH.Q20X{i}",
        f"Jellyfish sightings compilation, enclosed sea region {i}",
        abstract="Citizen science jellyfish abundance reports.",
        params=["abundance"], geo=MED, time=("2013-01-01", "2013-12-31"))
    for i in range(1, 4)
]
QUERIES.append({
    "qid": "Q20", "category": 5,
    "text": "Jellyfish abundance together with water temperature and salinity in the "
            "subpolar North Atlantic",
    "relevant": q20_relevant, "decoys": q20_decoys,
    "geo": NORTH_ATLANTIC, "required_parameters": ["abundance", "salinity"],
    "constraints": {
        "facets": [{"name": "q20-taxon", "synonyms": ["jellyfish", "gelatinous"]}],
        "required_parameters": ["abundance"],
        "notes": ["taxon recognized, region not yet constrained"],
    },
    "refine": {
        "missing": ["subpolar North Atlantic box", "hydrographic parameters"],
        "refinements": [
            {"action": "set_geo", "box": {"lat_min": 58.0, "lat_max": 70.0,
                                          "lon_min": -47.0, "lon_max": 6.0}},
            {"action": "require_parameter", "name": "salinity"},
            {"action": "add_synonyms", "name": "q20-taxon",
             "synonyms": ["zooplankton abundance"]},
        ],
    },
})

# --- fillers ---------------------------------------------------------------

FILLERS = [
    rec(f"10.1594/BENCH.F{i:02d}", title, abstract=abstract, params=list(params))
    for i, (title, abstract, params) in enumerate([
        ("Global drifter program quality flags", "Housekeeping tables.", ("flag",)),
        ("Cruise station list almanac", "Positions of archived stations.", ("position",)),
        ("Instrument calibration coefficients registry", "Laboratory constants.", ()),
        ("Seafloor photograph annotation vocabulary", "Controlled terms.", ()),
        ("Data management plan templates", "Documentation collection.", ()),
        ("Sensor firmware changelog archive", "Engineering notes.", ()),
    ], start=1)
]


def build_corpus():
    corpus = []
    for q in QUERIES:
        corpus.extend(q["relevant"])
        corpus.extend(q["decoys"])
    corpus.extend(FILLERS)
    return corpus


def build_queries():
    out = []
    for q in QUERIES:
        doc = {
            "id": q["qid"],
            "text": q["text"],
            "category": q["category"],
            "relevant_ids": [r["id"] for r in q["relevant"]],
        }
        if q.get("geo"):
            g = q["geo"]
            doc["geo"] = {"lat_min": g[0], "lat_max": g[1], "lon_min": g[2], "lon_max": g[3]}
        if q.get("time"):
            doc["time"] = {"start": f"{q['time'][0]}T00:00:00+00:00",
                           "end": f"{q['time'][1]}T00:00:00+00:00"}
        if q.get("required_parameters"):
            doc["required_parameters"] = q["required_parameters"]
        out.append(doc)
    return out


def build_script():
    """Scripted-model rules: translation per query, one consumable adequacy
    verdict per hard query, then a global sufficient verdict."""
    rules = []
    for q in QUERIES:
        snippet = q["text"][:60]
        rules.append({
            "match": ["Derive metadata search constraints", snippet],
            "structured": q["constraints"],
        })
    for q in QUERIES:
        if q["refine"] is not None:
            marker = q["constraints"]["facets"][0]["name"]
            rules.append({
                "match": ["Assess retrieval adequacy", marker],
                "consume_once": True,
                "structured": {
                    "sufficient": False,
                    "missing": q["refine"]["missing"],
                    "refinements": q["refine"]["refinements"],
                },
            })
    rules.append({
        "match": ["Assess retrieval adequacy"],
        "structured": {"sufficient": True, "missing": [], "refinements": []},
    })
    return rules


def main():
    corpus = build_corpus()
    ids = [r["id"] for r in corpus]
    assert len(ids) == len(set(ids)), "duplicate record ids"
    (HERE / "corpus.jsonl").write_text(
        "\n".join(json.dumps(r, sort_keys=True) for r in corpus) + "\n", encoding="utf-8")
    (HERE / "queries.jsonl").write_text(
        "\n".join(json.dumps(qd, sort_keys=True) for qd in build_queries()) + "\n",
        encoding="utf-8")
    (HERE / "script.jsonl").write_text(
        "\n".join(json.dumps(r, sort_keys=True) for r in build_script()) + "\n",
        encoding="utf-8")
    print(f"wrote {len(corpus)} records, {len(QUERIES)} queries, "
          f"{len(build_script())} script rules")


if __name__ == "__main__":
    main()
