import { readFileSync } from 'node:fs'
import { join } from 'node:path'

import { parseBundle } from '../src/bundle.js'
import type { ReportBundle } from '../src/types.js'

// vitest runs with the package root as cwd; under the jsdom environment
// import.meta.url is an http: URL, so filesystem paths anchor on cwd
const FIXTURES = join(process.cwd(), 'tests', 'fixtures')

export function fixtureText(name: string): string {
    return readFileSync(join(FIXTURES, name, 'report.json'), 'utf8')
}

export function fixtureDoc(name: string): unknown {
    return JSON.parse(fixtureText(name))
}

export function fixture(name: string): ReportBundle {
    return parseBundle(fixtureDoc(name))
}
