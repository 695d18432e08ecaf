// Canned API payloads mirroring real service responses.

import type {
  ExecuteResponse,
  QuestionResponse,
  SchemaPayload,
  SummaryPayload,
} from "../src/types";

export const SCHEMA: SchemaPayload = {
  labels: ["Encounters", "Medications", "Patients"],
  relationship_types: {
    ENCOUNTER_FOR_MEDICATION: { source: "Encounters", target: "Medications" },
    PATIENT_HAS_MEDICATION: { source: "Patients", target: "Medications" },
  },
  properties: {
    Encounters: ["DESCRIPTION", "ID", "REASON"],
    Medications: ["DESCRIPTION", "ID", "REASON"],
    Patients: ["BIRTHDATE", "BIRTHPLACE", "GENDER", "ID", "RACE"],
  },
};

export const SUMMARY: SummaryPayload = {
  node_count: 275,
  relationship_count: 225,
  labels: { Encounters: 132, Medications: 93, Patients: 50 },
  types: { ENCOUNTER_FOR_MEDICATION: 93, PATIENT_HAS_MEDICATION: 132 },
};

export const POPULAR_QUESTION: QuestionResponse = {
  turn_id: 1,
  candidates: [
    {
      id: "90104473ceccf7bb",
      script:
        "MATCH (n:Encounters)-[r:ENCOUNTER_FOR_MEDICATION]-() " +
        "WITH n, count(*) AS degree RETURN id(n), degree ORDER BY degree DESC",
      explanation:
        "Ranks Encounters by number of incident ENCOUNTER_FOR_MEDICATION relationships.",
      score: 3.0,
      kind: "Navigational",
      algorithm: "DegreeCentrality",
    },
    {
      id: "70b6f8a664a0fafb",
      script:
        "CALL gds.graph.create('my_graph', 'Encounters', " +
        "{ENCOUNTER_FOR_MEDICATION: {orientation: 'NATURAL'}});\n" +
        "CALL gds.pageRank.write.estimate('my_graph', {writeProperty: 'pageRank', " +
        "maxIterations: 20, dampingFactor: 0.85}) YIELD nodeCount, " +
        "relationshipCount, bytesMin, bytesMax, requiredMemory;\n" +
        "CALL gds.pageRank.stream('my_graph') YIELD nodeId, score " +
        "RETURN gds.util.asNode(nodeId).DESCRIPTION AS name, score " +
        "ORDER BY score DESC LIMIT 10",
      explanation:
        "Scores Encounters with PageRank over ENCOUNTER_FOR_MEDICATION and " +
        "returns the top 10.",
      score: 3.0,
      kind: "DataScience",
      algorithm: "PageRank",
    },
  ],
  diagnostics: null,
};

export const EXECUTE_DEGREE: ExecuteResponse = {
  turn_id: 1,
  candidate_id: "90104473ceccf7bb",
  columns: ["id(n)", "degree"],
  rows: [
    [50, 3],
    [53, 3],
    [117, 2],
  ],
  estimates: [],
  error: null,
};

export const EXECUTE_PAGERANK: ExecuteResponse = {
  turn_id: 1,
  candidate_id: "70b6f8a664a0fafb",
  columns: ["name", "score"],
  rows: [
    ["Emergency Room Admission", 0.0076],
    ["Telehealth Visit", 0.0076],
  ],
  estimates: [
    {
      nodeCount: 132,
      relationshipCount: 0,
      bytesMin: 6336,
      bytesMax: 12672,
      requiredMemory: "[6336 Bytes ... 12672 Bytes]",
    },
  ],
  error: null,
};

export const PARSE_FAILURE: QuestionResponse = {
  turn_id: 2,
  candidates: [],
  diagnostics: {
    message: "no grammar production matches the question",
    furthest_span: [0, 5],
    productions: ["Selection", "Projection"],
  },
};
