// Built-in boards. Sessions are always created with an explicit model so
// the client knows the edges it draws; the server still owns the rules.

import { ModelDoc } from "./api.js";

/** Six states, proponent-friendly: every opening is winning for them. */
export const CLASSIC: ModelDoc = {
  states: ["1", "2", "3", "4", "5", "6"],
  relations: [
    [
      ["1", "2"],
      ["1", "3"],
      ["2", "5"],
      ["3", "4"],
      ["4", "6"],
      ["5", "4"],
      ["6", "4"],
    ],
  ],
};

/** Two states the opponent owns outright: the token is herded into the
 * trap and poisoned in. */
export const STRONGHOLD: ModelDoc = {
  states: ["1", "2"],
  relations: [
    [
      ["1", "1"],
      ["1", "2"],
      ["2", "2"],
    ],
  ],
};

export const BOARDS: Record<string, ModelDoc> = {
  classic: CLASSIC,
  stronghold: STRONGHOLD,
};
